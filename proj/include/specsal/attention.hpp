#pragma once

#include "specsal/core.hpp"
#include "specsal/resample.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace specsal {

enum class Normalizer { Sigmoid, Softmax };

// Dense feature block: (height*width) x depth matrix, row-major, so each
// pixel's channel vector is contiguous.
template <typename T>
struct FeatureTensor {
  int height = 0, width = 0, depth = 0;
  RowMatrix<T> data;

  static FeatureTensor zeros(int h, int w, int d) {
    require(h >= 1 && w >= 1 && d >= 1, "feature: dimensions must be positive");
    FeatureTensor f;
    f.height = h;
    f.width = w;
    f.depth = d;
    f.data = RowMatrix<T>::Zero(std::int64_t{h} * w, d);
    return f;
  }

  std::int64_t pixels() const { return std::int64_t{height} * width; }
  T& at(int i, int j, int c) { return data(std::int64_t{i} * width + j, c); }
  T at(int i, int j, int c) const { return data(std::int64_t{i} * width + j, c); }
};

template <typename T>
void validate_feature(const FeatureTensor<T>& f) {
  require(f.height >= 1 && f.width >= 1 && f.depth >= 1, "feature: dimensions must be positive");
  require(f.data.rows() == f.pixels() && f.data.cols() == f.depth,
          "feature: storage does not match dimensions");
}

// Single-head neighborhood attention parameters. The bias table is indexed
// by relative offset: entry (di + k - 1, dj + k - 1) for key offset (di, dj)
// from the query pixel, covering the shifted border windows.
template <typename T>
struct AttentionParams {
  int kernel = 0;
  Normalizer normalizer = Normalizer::Sigmoid;
  RowMatrix<T> wq, wk, wv;  // x_depth x d, y_depth x d, y_depth x d_v
  RowMatrix<T> bias;        // (2k-1) x (2k-1)
};

constexpr int kMaxAttentionKernel = 13;

template <typename T>
void validate_attention(const FeatureTensor<T>& x, const FeatureTensor<T>& y,
                        const AttentionParams<T>& p) {
  validate_feature(x);
  validate_feature(y);
  require(x.height == y.height && x.width == y.width,
          "attention: query/key spatial dimensions differ");
  require(p.kernel >= 1 && p.kernel % 2 == 1, "attention: kernel must be odd and positive");
  require(p.kernel <= kMaxAttentionKernel, "attention: kernel size exceeds bias table cap");
  require(p.kernel <= x.height && p.kernel <= x.width,
          "attention: kernel larger than image");
  require(p.wq.rows() == x.depth, "attention: wq rows must match query depth");
  require(p.wk.rows() == y.depth, "attention: wk rows must match key depth");
  require(p.wv.rows() == y.depth, "attention: wv rows must match key depth");
  require(p.wq.cols() == p.wk.cols(), "attention: wq/wk column counts differ");
  require(p.wq.cols() >= 1 && p.wv.cols() >= 1, "attention: empty projection");
  require(p.bias.rows() == 2 * p.kernel - 1 && p.bias.cols() == 2 * p.kernel - 1,
          "attention: bias table must be (2k-1) x (2k-1)");
}

// Window origin for query (i, j): k x k block shifted to stay inside the
// image, never shrunk.
inline std::pair<int, int> attention_window_origin(int i, int j, int k, int h, int w) {
  int r = (k - 1) / 2;
  return {std::clamp(i - r, 0, h - k), std::clamp(j - r, 0, w - k)};
}

namespace detail {

// Fills k*k window weights for query pixel n0. q, kk are the projected
// matrices; logits get the 1/sqrt(d) scale plus the relative-offset bias.
template <typename T>
void attention_window_weights(const RowMatrix<T>& q, const RowMatrix<T>& kk,
                              const AttentionParams<T>& p, int i, int j, int h, int w,
                              T* weights) {
  int k = p.kernel;
  auto [si, sj] = attention_window_origin(i, j, k, h, w);
  std::int64_t n0 = std::int64_t{i} * w + j;
  T scale = T(1) / std::sqrt(static_cast<T>(p.wq.cols()));
  for (int dp = 0; dp < k; ++dp)
    for (int dq = 0; dq < k; ++dq) {
      int pi = si + dp, pj = sj + dq;
      std::int64_t m = std::int64_t{pi} * w + pj;
      T logit = q.row(n0).dot(kk.row(m)) * scale + p.bias(pi - i + k - 1, pj - j + k - 1);
      weights[dp * k + dq] = logit;
    }
  int kk2 = k * k;
  if (p.normalizer == Normalizer::Sigmoid) {
    for (int t = 0; t < kk2; ++t) weights[t] = T(1) / (T(1) + std::exp(-weights[t]));
  } else {
    T mx = weights[0];
    for (int t = 1; t < kk2; ++t) mx = std::max(mx, weights[t]);
    T sum = T(0);
    for (int t = 0; t < kk2; ++t) {
      weights[t] = std::exp(weights[t] - mx);
      sum += weights[t];
    }
    for (int t = 0; t < kk2; ++t) weights[t] /= sum;
  }
}

}  // namespace detail

template <typename T>
FeatureTensor<T> neighborhood_attention(const FeatureTensor<T>& x, const FeatureTensor<T>& y,
                                        const AttentionParams<T>& p) {
  validate_attention(x, y, p);
  int h = x.height, w = x.width, k = p.kernel;
  RowMatrix<T> q = x.data * p.wq;
  RowMatrix<T> kk = y.data * p.wk;
  RowMatrix<T> v = y.data * p.wv;
  FeatureTensor<T> out = FeatureTensor<T>::zeros(h, w, static_cast<int>(p.wv.cols()));
  std::vector<T> weights(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) {
      detail::attention_window_weights(q, kk, p, i, j, h, w, weights.data());
      auto [si, sj] = attention_window_origin(i, j, k, h, w);
      auto acc = out.data.row(std::int64_t{i} * w + j);
      for (int dp = 0; dp < k; ++dp)
        for (int dq = 0; dq < k; ++dq) {
          std::int64_t m = std::int64_t{si + dp} * w + (sj + dq);
          acc += weights[dp * k + dq] * v.row(m);
        }
    }
  return out;
}

// k x k window weights for one query pixel, for tests and visualization.
template <typename T>
RowMatrix<T> attention_weights_at(const FeatureTensor<T>& x, const FeatureTensor<T>& y,
                                  const AttentionParams<T>& p, int i, int j) {
  validate_attention(x, y, p);
  require(i >= 0 && i < x.height && j >= 0 && j < x.width, "attention: pixel outside image");
  RowMatrix<T> q = x.data * p.wq;
  RowMatrix<T> kk = y.data * p.wk;
  RowMatrix<T> out(p.kernel, p.kernel);
  std::vector<T> weights(static_cast<std::size_t>(p.kernel) * p.kernel);
  detail::attention_window_weights(q, kk, p, i, j, x.height, x.width, weights.data());
  for (int dp = 0; dp < p.kernel; ++dp)
    for (int dq = 0; dq < p.kernel; ++dq) out(dp, dq) = weights[dp * p.kernel + dq];
  return out;
}

template <typename T>
struct NaGrads {
  FeatureTensor<T> x, y;
  RowMatrix<T> wq, wk, wv, bias;
};

template <typename T>
NaGrads<T> neighborhood_attention_backward(const FeatureTensor<T>& x, const FeatureTensor<T>& y,
                                           const AttentionParams<T>& p,
                                           const FeatureTensor<T>& d_out) {
  validate_attention(x, y, p);
  validate_feature(d_out);
  require(d_out.height == x.height && d_out.width == x.width &&
              d_out.depth == static_cast<int>(p.wv.cols()),
          "attention: upstream gradient shape mismatch");
  int h = x.height, w = x.width, k = p.kernel;
  RowMatrix<T> q = x.data * p.wq;
  RowMatrix<T> kk = y.data * p.wk;
  RowMatrix<T> v = y.data * p.wv;
  T scale = T(1) / std::sqrt(static_cast<T>(p.wq.cols()));

  RowMatrix<T> dq = RowMatrix<T>::Zero(q.rows(), q.cols());
  RowMatrix<T> dkk = RowMatrix<T>::Zero(kk.rows(), kk.cols());
  RowMatrix<T> dv = RowMatrix<T>::Zero(v.rows(), v.cols());
  NaGrads<T> g;
  g.bias = RowMatrix<T>::Zero(2 * k - 1, 2 * k - 1);

  std::vector<T> weights(static_cast<std::size_t>(k) * k);
  std::vector<T> dl(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) {
      detail::attention_window_weights(q, kk, p, i, j, h, w, weights.data());
      auto [si, sj] = attention_window_origin(i, j, k, h, w);
      std::int64_t n0 = std::int64_t{i} * w + j;
      auto dn = d_out.data.row(n0);
      // d(weight) then d(logit) per window cell
      T wsum = T(0);
      for (int t = 0; t < k * k; ++t) {
        std::int64_t m = std::int64_t{si + t / k} * w + (sj + t % k);
        T da = dn.dot(v.row(m));
        dv.row(m) += weights[t] * dn;
        dl[t] = da;
      }
      if (p.normalizer == Normalizer::Sigmoid) {
        for (int t = 0; t < k * k; ++t) dl[t] *= weights[t] * (T(1) - weights[t]);
      } else {
        for (int t = 0; t < k * k; ++t) wsum += weights[t] * dl[t];
        for (int t = 0; t < k * k; ++t) dl[t] = weights[t] * (dl[t] - wsum);
      }
      for (int dp = 0; dp < k; ++dp)
        for (int dqi = 0; dqi < k; ++dqi) {
          int t = dp * k + dqi;
          int pi = si + dp, pj = sj + dqi;
          std::int64_t m = std::int64_t{pi} * w + pj;
          g.bias(pi - i + k - 1, pj - j + k - 1) += dl[t];
          dq.row(n0) += dl[t] * scale * kk.row(m);
          dkk.row(m) += dl[t] * scale * q.row(n0);
        }
    }

  g.x = FeatureTensor<T>::zeros(x.height, x.width, x.depth);
  g.x.data = dq * p.wq.transpose();
  g.y = FeatureTensor<T>::zeros(y.height, y.width, y.depth);
  g.y.data = dkk * p.wk.transpose() + dv * p.wv.transpose();
  g.wq = x.data.transpose() * dq;
  g.wk = y.data.transpose() * dkk;
  g.wv = y.data.transpose() * dv;
  return g;
}

// Channel split at floor(depth/2). Requires depth >= 2.
template <typename T>
std::pair<FeatureTensor<T>, FeatureTensor<T>> split_channels(const FeatureTensor<T>& f) {
  validate_feature(f);
  require(f.depth >= 2, "split: need at least two channels");
  int d1 = f.depth / 2;
  FeatureTensor<T> a = FeatureTensor<T>::zeros(f.height, f.width, d1);
  FeatureTensor<T> b = FeatureTensor<T>::zeros(f.height, f.width, f.depth - d1);
  a.data = f.data.leftCols(d1);
  b.data = f.data.rightCols(f.depth - d1);
  return {std::move(a), std::move(b)};
}

template <typename T>
FeatureTensor<T> concat_channels(const FeatureTensor<T>& a, const FeatureTensor<T>& b) {
  validate_feature(a);
  validate_feature(b);
  require(a.height == b.height && a.width == b.width, "concat: spatial dimensions differ");
  FeatureTensor<T> out = FeatureTensor<T>::zeros(a.height, a.width, a.depth + b.depth);
  out.data.leftCols(a.depth) = a.data;
  out.data.rightCols(b.depth) = b.data;
  return out;
}

template <typename T>
struct MfaConfig {
  int k_high = 13;
  int k_low = 9;
  int heads = 1;
  RowMatrix<T> w_out;                          // (d_high + d_low) x c_out
  Eigen::Matrix<T, 1, Eigen::Dynamic> b_out;   // c_out
};

template <typename T>
void validate_mfa_config(const MfaConfig<T>& cfg) {
  require(cfg.heads == 1, "mfa: only a single head is supported");
  require(cfg.k_high >= 1 && cfg.k_high % 2 == 1, "mfa: k_high must be odd");
  require(cfg.k_low >= 1 && cfg.k_low % 2 == 1, "mfa: k_low must be odd");
  require(cfg.w_out.rows() >= 1 && cfg.w_out.cols() >= 1, "mfa: missing output projection");
  require(cfg.b_out.cols() == cfg.w_out.cols(), "mfa: projection bias length mismatch");
}

// High-frequency branch: cross-attention of F_DE against the first half of
// F_DS's channels. Low-frequency branch: self-attention over the second
// half. Branch outputs are concatenated, linearly projected per pixel, and
// passed through ReLU.
template <typename T>
FeatureTensor<T> mixed_frequency_attention(const FeatureTensor<T>& f_de,
                                           const FeatureTensor<T>& f_ds,
                                           const MfaConfig<T>& cfg,
                                           const AttentionParams<T>& high,
                                           const AttentionParams<T>& low) {
  validate_mfa_config(cfg);
  require(high.kernel == cfg.k_high, "mfa: high-branch kernel mismatch");
  require(low.kernel == cfg.k_low, "mfa: low-branch kernel mismatch");
  auto [g1, g2] = split_channels(f_ds);
  FeatureTensor<T> f_h = neighborhood_attention(f_de, g1, high);
  FeatureTensor<T> f_l = neighborhood_attention(g2, g2, low);
  FeatureTensor<T> cat = concat_channels(f_h, f_l);
  require(cfg.w_out.rows() == cat.depth, "mfa: projection rows must match branch depths");
  FeatureTensor<T> out = FeatureTensor<T>::zeros(cat.height, cat.width,
                                                 static_cast<int>(cfg.w_out.cols()));
  out.data = ((cat.data * cfg.w_out).rowwise() + cfg.b_out).cwiseMax(T(0));
  return out;
}

template <typename T>
struct MfaGrads {
  FeatureTensor<T> f_de, f_ds;
  RowMatrix<T> wq_high, wk_high, wv_high, bias_high;
  RowMatrix<T> wq_low, wk_low, wv_low, bias_low;
  RowMatrix<T> w_out;
  Eigen::Matrix<T, 1, Eigen::Dynamic> b_out;
};

template <typename T>
MfaGrads<T> mixed_frequency_attention_backward(const FeatureTensor<T>& f_de,
                                               const FeatureTensor<T>& f_ds,
                                               const MfaConfig<T>& cfg,
                                               const AttentionParams<T>& high,
                                               const AttentionParams<T>& low,
                                               const FeatureTensor<T>& d_out) {
  validate_mfa_config(cfg);
  auto [g1, g2] = split_channels(f_ds);
  FeatureTensor<T> f_h = neighborhood_attention(f_de, g1, high);
  FeatureTensor<T> f_l = neighborhood_attention(g2, g2, low);
  FeatureTensor<T> cat = concat_channels(f_h, f_l);
  require(cfg.w_out.rows() == cat.depth, "mfa: projection rows must match branch depths");
  require(d_out.height == cat.height && d_out.width == cat.width &&
              d_out.depth == static_cast<int>(cfg.w_out.cols()),
          "mfa: upstream gradient shape mismatch");
  RowMatrix<T> pre = (cat.data * cfg.w_out).rowwise() + cfg.b_out;
  RowMatrix<T> dpre =
      (pre.array() > T(0)).select(d_out.data, RowMatrix<T>::Zero(pre.rows(), pre.cols()));

  MfaGrads<T> g;
  g.w_out = cat.data.transpose() * dpre;
  g.b_out = dpre.colwise().sum();
  RowMatrix<T> dcat = dpre * cfg.w_out.transpose();

  FeatureTensor<T> d_fh = FeatureTensor<T>::zeros(cat.height, cat.width, f_h.depth);
  d_fh.data = dcat.leftCols(f_h.depth);
  FeatureTensor<T> d_fl = FeatureTensor<T>::zeros(cat.height, cat.width, f_l.depth);
  d_fl.data = dcat.rightCols(f_l.depth);

  NaGrads<T> gh = neighborhood_attention_backward(f_de, g1, high, d_fh);
  NaGrads<T> gl = neighborhood_attention_backward(g2, g2, low, d_fl);

  g.f_de = gh.x;
  FeatureTensor<T> d_g2 = gl.x;
  d_g2.data += gl.y.data;  // self-attention: query and key/value paths share g2
  g.f_ds = concat_channels(gh.y, d_g2);
  g.wq_high = gh.wq;
  g.wk_high = gh.wk;
  g.wv_high = gh.wv;
  g.bias_high = gh.bias;
  g.wq_low = gl.wq;
  g.wk_low = gl.wk;
  g.wv_low = gl.wv;
  g.bias_low = gl.bias;
  return g;
}

// Encoder/decoder skip fusion by channel concatenation.
template <typename T>
FeatureTensor<T> fuse_edge_skip(const FeatureTensor<T>& enc, const FeatureTensor<T>& dec) {
  return concat_channels(enc, dec);
}

// Bilinear resize to (out_h, out_w) followed by a per-pixel linear channel
// map (depth x proj.cols()).
template <typename T>
FeatureTensor<T> resize_project(const FeatureTensor<T>& f, int out_h, int out_w,
                                const RowMatrix<T>& proj) {
  validate_feature(f);
  require(proj.rows() == f.depth, "resize_project: projection rows must match depth");
  require(proj.cols() >= 1, "resize_project: empty projection");
  FeatureTensor<T> resized = FeatureTensor<T>::zeros(out_h, out_w, f.depth);
  RowArray<T> plane(f.height, f.width);
  for (int c = 0; c < f.depth; ++c) {
    for (std::int64_t p = 0; p < f.pixels(); ++p)
      plane.data()[p] = f.data(p, c);
    RowArray<T> rp = resize_plane_bilinear<T>(plane, out_h, out_w);
    for (std::int64_t p = 0; p < resized.pixels(); ++p) resized.data(p, c) = rp.data()[p];
  }
  FeatureTensor<T> out = FeatureTensor<T>::zeros(out_h, out_w, static_cast<int>(proj.cols()));
  out.data = resized.data * proj;
  return out;
}

// Decoder stage-3 fusion: out = d3 + concat(resize_project(r1), resize_project(r2)).
template <typename T>
FeatureTensor<T> fuse_saliency_skip(const FeatureTensor<T>& d3, const FeatureTensor<T>& r1,
                                    const FeatureTensor<T>& r2, const RowMatrix<T>& proj1,
                                    const RowMatrix<T>& proj2) {
  validate_feature(d3);
  FeatureTensor<T> a = resize_project(r1, d3.height, d3.width, proj1);
  FeatureTensor<T> b = resize_project(r2, d3.height, d3.width, proj2);
  FeatureTensor<T> cat = concat_channels(a, b);
  require(cat.depth == d3.depth, "fuse: projected depths must sum to the decoder depth");
  FeatureTensor<T> out = d3;
  out.data += cat.data;
  return out;
}

// Seeded demo/test initialization: projections uniform(-0.1, 0.1), bias
// tables zero.
template <typename T>
AttentionParams<T> make_attention_params(int x_depth, int y_depth, int d, int d_v, int k,
                                         Normalizer norm, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  AttentionParams<T> p;
  p.kernel = k;
  p.normalizer = norm;
  auto fill = [&](RowMatrix<T>& m, int rows, int cols) {
    m.resize(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = static_cast<T>(u(rng));
  };
  fill(p.wq, x_depth, d);
  fill(p.wk, y_depth, d);
  fill(p.wv, y_depth, d_v);
  p.bias = RowMatrix<T>::Zero(2 * k - 1, 2 * k - 1);
  return p;
}

template <typename T>
FeatureTensor<T> make_random_feature(int h, int w, int d, double lo, double hi,
                                     std::mt19937& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  FeatureTensor<T> f = FeatureTensor<T>::zeros(h, w, d);
  for (Eigen::Index i = 0; i < f.data.size(); ++i) f.data.data()[i] = static_cast<T>(u(rng));
  return f;
}

}  // namespace specsal
