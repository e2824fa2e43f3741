#include "specsal/seo.hpp"

#include <algorithm>
#include <cmath>

namespace specsal {

void validate_seo_config(const SeoConfig& cfg) {
  require(!cfg.kernel_sizes.empty(), "seo: no kernel sizes configured");
  for (int k : cfg.kernel_sizes) make_gradient_kernels(k);
}

GradientKernels make_gradient_kernels(int k) {
  GradientKernels g;
  g.k = k;
  g.smooth.resize(k);
  g.deriv.resize(k);
  switch (k) {
    case 3:
      g.smooth << 1, 2, 1;
      g.deriv << -1, 0, 1;
      break;
    case 5:
      g.smooth << 1, 4, 6, 4, 1;
      g.deriv << -1, -2, 0, 2, 1;
      break;
    case 7:
      g.smooth << 1, 6, 15, 20, 15, 6, 1;
      g.deriv << -1, -4, -5, 0, 5, 4, 1;
      break;
    default:
      throw Error("seo: unsupported kernel size " + std::to_string(k));
  }
  g.gx = g.smooth * g.deriv.transpose();
  g.gy = g.gx.transpose();
  return g;
}

namespace {

inline double sad_precomp(const float* a, const float* b, int n, double na, double nb) {
  double dot = 0.0;
  for (int i = 0; i < n; ++i) dot += static_cast<double>(a[i]) * b[i];
  if (na == 0.0 || nb == 0.0) return 0.0;
  double c2 = dot * dot;
  double d2 = na * nb;
  if (c2 >= d2) return dot >= 0.0 ? 0.0 : M_PI;
  double cosang = dot / std::sqrt(d2);
  if (cosang > 1.0) cosang = 1.0;
  if (cosang < -1.0) cosang = -1.0;
  return std::acos(cosang);
}

// Dot product accumulated middle-first, then outer index pairs (i, k-1-i)
// grouped per pair. Reversing both arguments cannot change the result bit:
// each pair's two addends merely swap, and FP addition commutes. Negating
// one argument negates the result exactly. spectral_edge relies on this to
// commute bitwise with quarter turns of the image.
inline double paired_dot(const double* c, const double* v, int k) {
  int mid = k / 2;
  double s = c[mid] * v[mid];
  for (int i = 0; i < mid; ++i) s += c[i] * v[i] + c[k - 1 - i] * v[k - 1 - i];
  return s;
}

struct SadWindow {
  // M(p, q) for the clamped k x k window centered on one pixel.
  std::vector<double> m;
  int k;

  double at(int p, int q) const { return m[static_cast<std::size_t>(p) * k + q]; }
};

}  // namespace

RowMatrix<double> local_sad_map(const HyperCube& cube, int i, int j, int k) {
  validate_cube(cube);
  make_gradient_kernels(k);
  require(i >= 0 && i < cube.height && j >= 0 && j < cube.width,
          "local_sad_map: pixel outside image");
  int r = k / 2;
  std::int64_t plane = cube.plane();
  const float* base = cube.samples.data();
  const float* center = base + std::int64_t{i} * cube.width + j;
  RowMatrix<double> m(k, k);
  for (int dp = 0; dp < k; ++dp) {
    int y = std::clamp(i + dp - r, 0, cube.height - 1);
    for (int dq = 0; dq < k; ++dq) {
      int x = std::clamp(j + dq - r, 0, cube.width - 1);
      if (y == i && x == j) {
        m(dp, dq) = 0.0;
        continue;
      }
      m(dp, dq) = sad(center, plane, base + std::int64_t{y} * cube.width + x, plane,
                      cube.channels);
    }
  }
  return m;
}

Map2D spectral_edge(const HyperCube& cube, int k, std::int64_t* degenerate_count, int threads) {
  validate_cube(cube);
  GradientKernels g = make_gradient_kernels(k);
  int h = cube.height, w = cube.width, c = cube.channels;
  std::int64_t n = std::int64_t{h} * w;
  int r = k / 2;

  // Pixel-major copy (spectra contiguous) plus per-pixel squared norms,
  // accumulated in the same ascending band order sad() uses.
  RowMatrix<float> px(n, c);
  for (int b = 0; b < c; ++b) {
    const float* src = cube.samples.data() + std::int64_t{b} * n;
    for (std::int64_t p = 0; p < n; ++p) px(p, b) = src[p];
  }
  Eigen::VectorXd norms(n);
  std::int64_t zero_norms = 0;
  for (std::int64_t p = 0; p < n; ++p) {
    const float* v = px.row(p).data();
    double n2 = 0.0;
    for (int i = 0; i < c; ++i) n2 += static_cast<double>(v[i]) * v[i];
    norms(p) = n2;
    if (n2 == 0.0) ++zero_norms;
  }
  if (degenerate_count) *degenerate_count = zero_norms;

  std::vector<double> smooth(k), deriv(k);
  for (int i = 0; i < k; ++i) {
    smooth[i] = g.smooth[i];
    deriv[i] = g.deriv[i];
  }

  Map2D out;
  out.kind = MapKind::Raw;
  out.values.resize(h, w);
  parallel_for(h, threads, [&](std::int64_t ylo, std::int64_t yhi) {
    SadWindow win{std::vector<double>(static_cast<std::size_t>(k) * k), k};
    std::vector<double> row_dots(k), col_dots(k);
    for (std::int64_t y = ylo; y < yhi; ++y) {
      for (int x = 0; x < w; ++x) {
        std::int64_t p0 = y * w + x;
        const float* a = px.row(p0).data();
        double na = norms(p0);
        for (int dp = 0; dp < k; ++dp) {
          std::int64_t py = std::clamp<std::int64_t>(y + dp - r, 0, h - 1);
          for (int dq = 0; dq < k; ++dq) {
            std::int64_t pxx = std::clamp<std::int64_t>(x + dq - r, 0, w - 1);
            std::int64_t p1 = py * w + pxx;
            win.m[static_cast<std::size_t>(dp) * k + dq] =
                p1 == p0 ? 0.0 : sad_precomp(a, px.row(p1).data(), c, na, norms(p1));
          }
        }
        // row_dots[p] = <deriv, M(p, .)>, col_dots[q] = <deriv, M(., q)>
        // (k <= 7, so a fixed scratch buffer is enough)
        double tmp[7];
        for (int dp = 0; dp < k; ++dp) {
          for (int dq = 0; dq < k; ++dq) tmp[dq] = win.at(dp, dq);
          row_dots[dp] = paired_dot(deriv.data(), tmp, k);
        }
        for (int dq = 0; dq < k; ++dq) {
          for (int dp = 0; dp < k; ++dp) tmp[dp] = win.at(dp, dq);
          col_dots[dq] = paired_dot(deriv.data(), tmp, k);
        }
        double resp_x = paired_dot(smooth.data(), row_dots.data(), k);
        double resp_y = paired_dot(smooth.data(), col_dots.data(), k);
        out.values(y, x) = static_cast<float>(std::abs(resp_x) + std::abs(resp_y));
      }
    }
  });
  return out;
}

std::vector<Map2D> run_seo(const HyperCube& cube, const SeoConfig& cfg, int threads) {
  validate_seo_config(cfg);
  std::vector<Map2D> maps;
  maps.reserve(cfg.kernel_sizes.size());
  for (int k : cfg.kernel_sizes) maps.push_back(spectral_edge(cube, k, nullptr, threads));
  return maps;
}

Map2D sobel_magnitude(const Map2D& map) {
  int h = map.height(), w = map.width();
  require(h >= 1 && w >= 1, "sobel: empty map");
  Map2D out;
  out.kind = MapKind::Raw;
  out.values.resize(h, w);
  auto v = [&](int y, int x) {
    return static_cast<double>(map.values(std::clamp(y, 0, h - 1), std::clamp(x, 0, w - 1)));
  };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double gx = -v(y - 1, x - 1) + v(y - 1, x + 1) - 2 * v(y, x - 1) + 2 * v(y, x + 1) -
                  v(y + 1, x - 1) + v(y + 1, x + 1);
      double gy = -v(y - 1, x - 1) - 2 * v(y - 1, x) - v(y - 1, x + 1) + v(y + 1, x - 1) +
                  2 * v(y + 1, x) + v(y + 1, x + 1);
      out.values(y, x) = static_cast<float>(std::sqrt(gx * gx + gy * gy));
    }
  return out;
}

Map2D edge_ground_truth(const FalseColor& fc, const std::vector<Map2D>& saliency,
                        double threshold) {
  require(!saliency.empty(), "edge_gt: no saliency maps");
  int h = fc.r.height(), w = fc.r.width();
  require(fc.g.height() == h && fc.g.width() == w && fc.b.height() == h && fc.b.width() == w,
          "edge_gt: false-color plane size mismatch");
  Map2D luma;
  luma.kind = MapKind::Normalized;
  luma.values = 0.299f * fc.r.values + 0.587f * fc.g.values + 0.114f * fc.b.values;

  Map2D sal_sum;
  sal_sum.kind = MapKind::Raw;
  sal_sum.values = saliency[0].values;
  for (std::size_t i = 1; i < saliency.size(); ++i) {
    require(saliency[i].height() == saliency[0].height() &&
                saliency[i].width() == saliency[0].width(),
            "edge_gt: saliency map size mismatch");
    sal_sum.values += saliency[i].values;
  }
  require(sal_sum.height() == h && sal_sum.width() == w,
          "edge_gt: saliency/false-color size mismatch");

  Map2D e1 = normalize_map(sobel_magnitude(luma));
  Map2D e2 = normalize_map(sobel_magnitude(normalize_map(sal_sum)));
  Map2D out;
  out.kind = MapKind::Binary;
  out.values.resize(h, w);
  for (Eigen::Index i = 0; i < out.values.size(); ++i) {
    double raw = std::min(1.0, static_cast<double>(e1.values.data()[i]) + e2.values.data()[i]);
    out.values.data()[i] = raw >= threshold ? 1.0f : 0.0f;
  }
  return out;
}

}  // namespace specsal
