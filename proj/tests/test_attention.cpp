#include "doctest.h"

#include "oracles.hpp"
#include "specsal/gradcheck.hpp"

#include <cmath>
#include <random>

using namespace specsal;

namespace {

using FT = FeatureTensor<double>;

bool rows_equal(const FT& a, const FT& b, int i, int j) {
  std::int64_t n = std::int64_t{i} * a.width + j;
  return a.data.row(n) == b.data.row(n);
}

}  // namespace

TEST_CASE("attention validation rejects shape mismatches") {
  std::mt19937 rng(1);
  FT x = make_random_feature<double>(5, 5, 3, 0.0, 1.0, rng);
  FT y = make_random_feature<double>(5, 5, 4, 0.0, 1.0, rng);
  AttentionParams<double> p =
      make_attention_params<double>(3, 4, 2, 2, 3, Normalizer::Sigmoid, rng);
  CHECK_NOTHROW(neighborhood_attention(x, y, p));
  p.kernel = 4;
  CHECK_THROWS_AS(neighborhood_attention(x, y, p), Error);
  p.kernel = 7;  // larger than the 5x5 image
  CHECK_THROWS_AS(neighborhood_attention(x, y, p), Error);
  p.kernel = 15;
  CHECK_THROWS_AS(neighborhood_attention(x, y, p), Error);
  p.kernel = 3;
  p.bias = RowMatrix<double>::Zero(3, 3);
  CHECK_THROWS_AS(neighborhood_attention(x, y, p), Error);
  p.bias = RowMatrix<double>::Zero(5, 5);
  FT ybad = make_random_feature<double>(5, 4, 4, 0.0, 1.0, rng);
  CHECK_THROWS_AS(neighborhood_attention(x, ybad, p), Error);
}

TEST_CASE("window origins shift inward at borders without shrinking") {
  // k=5 on a 7-row axis: radius 2, origins clamp to [0, 2].
  CHECK(attention_window_origin(0, 3, 5, 7, 7) == std::pair<int, int>{0, 1});
  CHECK(attention_window_origin(1, 3, 5, 7, 7) == std::pair<int, int>{0, 1});
  CHECK(attention_window_origin(2, 3, 5, 7, 7) == std::pair<int, int>{0, 1});
  CHECK(attention_window_origin(3, 3, 5, 7, 7) == std::pair<int, int>{1, 1});
  CHECK(attention_window_origin(6, 6, 5, 7, 7) == std::pair<int, int>{2, 2});
}

TEST_CASE("perturbations outside the window change nothing, bit for bit") {
  std::mt19937 rng(7);
  FT x = make_random_feature<double>(8, 8, 3, 0.0, 1.0, rng);
  FT y = make_random_feature<double>(8, 8, 4, 0.0, 1.0, rng);
  for (Normalizer norm : {Normalizer::Sigmoid, Normalizer::Softmax}) {
    AttentionParams<double> p = make_attention_params<double>(3, 4, 2, 3, 3, norm, rng);
    FT base = neighborhood_attention(x, y, p);

    // Key/value pixel (0,0) only reaches queries whose window includes it:
    // queries with i <= 1 and j <= 1 for k=3.
    FT y2 = y;
    y2.at(0, 0, 2) += 0.5;
    FT out2 = neighborhood_attention(x, y2, p);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        bool reach = i <= 1 && j <= 1;
        CHECK(rows_equal(base, out2, i, j) == !reach);
      }

    // A query pixel only reads its own row of x.
    FT x2 = x;
    x2.at(4, 4, 1) -= 0.25;
    FT out3 = neighborhood_attention(x2, y, p);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        CHECK(rows_equal(base, out3, i, j) == !(i == 4 && j == 4));
  }
}

TEST_CASE("interior outputs are translation equivariant, bit for bit") {
  std::mt19937 rng(13);
  FT x = make_random_feature<double>(9, 9, 3, 0.0, 1.0, rng);
  FT y = make_random_feature<double>(9, 9, 4, 0.0, 1.0, rng);
  // Shift content by (1,1); the vacated border row/column keeps junk.
  FT xs = x, ys = y;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      for (int c = 0; c < 3; ++c) xs.at(i, j, c) = x.at(i + 1, j + 1, c);
      for (int c = 0; c < 4; ++c) ys.at(i, j, c) = y.at(i + 1, j + 1, c);
    }
  for (Normalizer norm : {Normalizer::Sigmoid, Normalizer::Softmax}) {
    AttentionParams<double> p = make_attention_params<double>(3, 4, 2, 3, 3, norm, rng);
    FT base = neighborhood_attention(x, y, p);
    FT shifted = neighborhood_attention(xs, ys, p);
    // Both windows must be interior and read only shifted content.
    for (int i = 1; i <= 6; ++i)
      for (int j = 1; j <= 6; ++j) {
        std::int64_t a = std::int64_t{i} * 9 + j;
        std::int64_t b = std::int64_t{i + 1} * 9 + (j + 1);
        CHECK(shifted.data.row(a) == base.data.row(b));
      }
  }
}

TEST_CASE("softmax weights sum to one, sigmoid weights stay in (0,1)") {
  std::mt19937 rng(23);
  FT x = make_random_feature<double>(6, 7, 3, -1.0, 1.0, rng);
  FT y = make_random_feature<double>(6, 7, 4, -1.0, 1.0, rng);
  AttentionParams<double> soft =
      make_attention_params<double>(3, 4, 5, 2, 5, Normalizer::Softmax, rng);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (Eigen::Index t = 0; t < soft.bias.size(); ++t) soft.bias.data()[t] = u(rng);
  AttentionParams<double> sig = soft;
  sig.normalizer = Normalizer::Sigmoid;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 7; ++j) {
      RowMatrix<double> ws = attention_weights_at(x, y, soft, i, j);
      CHECK(std::abs(ws.sum() - 1.0) <= 1e-6);
      CHECK(ws.minCoeff() >= 0.0);
      RowMatrix<double> wg = attention_weights_at(x, y, sig, i, j);
      CHECK(wg.minCoeff() > 0.0);
      CHECK(wg.maxCoeff() < 1.0);
    }
}

TEST_CASE("softmax self-attention over a constant feature reproduces it") {
  std::mt19937 rng(29);
  FT y = FT::zeros(5, 5, 3);
  for (int c = 0; c < 3; ++c)
    for (std::int64_t p = 0; p < y.pixels(); ++p) y.data(p, c) = 0.3 + 0.2 * c;
  AttentionParams<double> p =
      make_attention_params<double>(3, 3, 2, 3, 3, Normalizer::Softmax, rng);
  p.wv = RowMatrix<double>::Identity(3, 3);
  FT out = neighborhood_attention(y, y, p);
  // Weights sum to 1 and every value vector is identical.
  for (std::int64_t n = 0; n < out.pixels(); ++n)
    for (int c = 0; c < 3; ++c)
      CHECK(out.data(n, c) == doctest::Approx(0.3 + 0.2 * c).epsilon(1e-12));
}

TEST_CASE("zeroed projections turn sigmoid attention into half the window sum") {
  std::mt19937 rng(31);
  FT x = make_random_feature<double>(7, 7, 3, 0.0, 1.0, rng);
  FT y = make_random_feature<double>(7, 7, 4, 0.0, 1.0, rng);
  AttentionParams<double> p =
      make_attention_params<double>(3, 4, 2, 4, 3, Normalizer::Sigmoid, rng);
  p.wq.setZero();
  p.wk.setZero();
  p.bias.setZero();
  p.wv = RowMatrix<double>::Identity(4, 4);
  FT out = neighborhood_attention(x, y, p);
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j)
      for (int c = 0; c < 4; ++c) {
        double sum = 0.0;
        for (int di = -1; di <= 1; ++di)
          for (int dj = -1; dj <= 1; ++dj) sum += y.at(i + di, j + dj, c);
        CHECK(out.at(i, j, c) == doctest::Approx(0.5 * sum).epsilon(1e-12));
      }
}

TEST_CASE("bias table is indexed by relative offset, covering border windows") {
  std::mt19937 rng(37);
  FT x = make_random_feature<double>(6, 6, 2, 0.0, 1.0, rng);
  FT y = make_random_feature<double>(6, 6, 2, 0.0, 1.0, rng);
  AttentionParams<double> p =
      make_attention_params<double>(2, 2, 2, 2, 3, Normalizer::Sigmoid, rng);
  p.wq.setZero();
  p.wk.setZero();
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) p.bias(a, b) = 0.1 * a - 0.2 * b;
  auto sigmoid = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };

  // Interior query (3,3): window offsets (-1..1), bias rows 1..3.
  RowMatrix<double> wi = attention_weights_at(x, y, p, 3, 3);
  for (int dp = 0; dp < 3; ++dp)
    for (int dq = 0; dq < 3; ++dq)
      CHECK(wi(dp, dq) == doctest::Approx(sigmoid(p.bias(dp + 1, dq + 1))).epsilon(1e-15));

  // Corner query (0,0): the window sits at offsets (0..2), bias rows 2..4.
  RowMatrix<double> wc = attention_weights_at(x, y, p, 0, 0);
  for (int dp = 0; dp < 3; ++dp)
    for (int dq = 0; dq < 3; ++dq)
      CHECK(wc(dp, dq) == doctest::Approx(sigmoid(p.bias(dp + 2, dq + 2))).epsilon(1e-15));
}

TEST_CASE("neighborhood attention matches the naive oracle") {
  std::mt19937 rng(41);
  for (Normalizer norm : {Normalizer::Sigmoid, Normalizer::Softmax}) {
    FT x = make_random_feature<double>(6, 5, 3, -1.0, 1.0, rng);
    FT y = make_random_feature<double>(6, 5, 4, -1.0, 1.0, rng);
    AttentionParams<double> p = make_attention_params<double>(3, 4, 2, 3, 5, norm, rng);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (Eigen::Index t = 0; t < p.bias.size(); ++t) p.bias.data()[t] = u(rng);
    FT got = neighborhood_attention(x, y, p);
    FT want = oracle::neighborhood_attention(x, y, p);
    CHECK((got.data - want.data).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("split and concat are exact inverses with floor split point") {
  std::mt19937 rng(43);
  FT f = make_random_feature<double>(4, 3, 5, -1.0, 1.0, rng);
  auto [a, b] = split_channels(f);
  CHECK(a.depth == 2);
  CHECK(b.depth == 3);
  CHECK(a.at(2, 1, 1) == f.at(2, 1, 1));
  CHECK(b.at(2, 1, 0) == f.at(2, 1, 2));
  FT back = concat_channels(a, b);
  CHECK(back.data == f.data);

  FT one = FT::zeros(2, 2, 1);
  CHECK_THROWS_AS(split_channels(one), Error);
}

TEST_CASE("mixed_frequency_attention matches the naive oracle at 6x6") {
  for (Normalizer norm : {Normalizer::Sigmoid, Normalizer::Softmax}) {
    MfaDims dims;
    dims.h = 6;
    dims.w = 6;
    dims.normalizer = norm;
    MfaInstance inst = make_mfa_instance(dims, norm == Normalizer::Sigmoid ? 101 : 202);
    FT got = mixed_frequency_attention(inst.f_de, inst.f_ds, inst.cfg, inst.high, inst.low);
    FT want = oracle::mixed_frequency_attention(inst.f_de, inst.f_ds, inst.cfg, inst.high,
                                                inst.low);
    CHECK((got.data - want.data).cwiseAbs().maxCoeff() <= 1e-6);
    CHECK(got.data.minCoeff() >= 0.0);  // ReLU output
    CHECK(got.height == 6);
    CHECK(got.width == 6);
    CHECK(got.depth == 6);
  }
}

TEST_CASE("fuse_edge_skip concatenates encoder then decoder channels") {
  std::mt19937 rng(47);
  FT enc = make_random_feature<double>(3, 3, 2, 0.0, 1.0, rng);
  FT dec = make_random_feature<double>(3, 3, 3, 0.0, 1.0, rng);
  FT out = fuse_edge_skip(enc, dec);
  CHECK(out.depth == 5);
  CHECK(out.at(1, 2, 0) == enc.at(1, 2, 0));
  CHECK(out.at(1, 2, 2) == dec.at(1, 2, 0));
  CHECK(out.at(1, 2, 4) == dec.at(1, 2, 2));
}

TEST_CASE("fuse_saliency_skip on a hand fixture") {
  FT d3 = FT::zeros(2, 2, 2);
  for (std::int64_t p = 0; p < 4; ++p) {
    d3.data(p, 0) = static_cast<double>(p);
    d3.data(p, 1) = 10.0 + p;
  }
  FT r1 = FT::zeros(1, 1, 1);
  r1.data(0, 0) = 2.0;
  FT r2 = FT::zeros(1, 1, 1);
  r2.data(0, 0) = -1.0;
  RowMatrix<double> proj1(1, 1), proj2(1, 1);
  proj1 << 3.0;   // r1 contributes 6 to channel 0
  proj2 << 0.5;   // r2 contributes -0.5 to channel 1
  FT out = fuse_saliency_skip(d3, r1, r2, proj1, proj2);
  for (std::int64_t p = 0; p < 4; ++p) {
    CHECK(out.data(p, 0) == doctest::Approx(p + 6.0));
    CHECK(out.data(p, 1) == doctest::Approx(10.0 + p - 0.5));
  }

  RowMatrix<double> wide(1, 2);
  wide << 1.0, 2.0;
  CHECK_THROWS_AS(fuse_saliency_skip(d3, r1, r2, proj1, wide), Error);
}

TEST_CASE("resize_project upsamples planes before projecting") {
  FT f = FT::zeros(1, 2, 2);
  f.data(0, 0) = 1.0;
  f.data(0, 1) = 5.0;
  f.data(1, 0) = 3.0;
  f.data(1, 1) = 7.0;
  RowMatrix<double> proj(2, 1);
  proj << 1.0, 1.0;
  FT out = resize_project(f, 1, 4, proj);
  REQUIRE(out.depth == 1);
  // Center-aligned x4 upsample of [a, b] samples at t = 0, 0.25, 0.75, 1.
  CHECK(out.data(0, 0) == doctest::Approx(1.0 + 5.0));
  CHECK(out.data(1, 0) == doctest::Approx(1.5 + 5.5));
  CHECK(out.data(2, 0) == doctest::Approx(2.5 + 6.5));
  CHECK(out.data(3, 0) == doctest::Approx(3.0 + 7.0));
}

TEST_CASE("analytic gradients pass the central-difference check") {
  // Seed 12 keeps every preactivation at least 5x eps away from the ReLU
  // kink in both modes, so the central differences never straddle it.
  const double eps = 1e-3;
  MfaDims dims;
  dims.h = 6;
  dims.w = 6;
  for (Normalizer norm : {Normalizer::Sigmoid, Normalizer::Softmax}) {
    dims.normalizer = norm;
    MfaInstance inst = make_mfa_instance(dims, 12);
    REQUIRE(mfa_min_abs_preactivation(inst) > 5 * eps);
    GradCheckReport rep = grad_check_mfa(inst, eps);
    CHECK(rep.coords > 0);
    CHECK(rep.max_rel_error < 1e-4);
  }
}

TEST_CASE("a corrupted backward pass is caught by the checker") {
  MfaDims dims;
  dims.h = 5;
  dims.w = 5;
  MfaInstance inst = make_mfa_instance(dims, 11);
  auto views = mfa_grad_views(inst);
  GradCheckReport rep = grad_check(
      views, [&] { return mfa_sum_loss(inst); },
      [&] {
        auto grads = mfa_analytic_grads(inst);
        // A 1% error on the output projection gradient, whose entries are
        // O(10), lifts the relative error to ~1e-2.
        for (double& gv : grads[10]) gv *= 1.01;
        return grads;
      },
      1e-3);
  CHECK(rep.max_rel_error > 1e-3);
}

TEST_CASE("zeroed low-branch projection rows kill the low-branch gradients") {
  MfaDims dims;
  dims.h = 5;
  dims.w = 5;
  MfaInstance inst = make_mfa_instance(dims, 11);
  int d_low = static_cast<int>(inst.low.wv.cols());
  inst.cfg.w_out.bottomRows(d_low).setZero();
  auto grads = mfa_analytic_grads(inst);
  // Views 6..9 are the low-branch parameters.
  for (int vi = 6; vi <= 9; ++vi)
    for (double gv : grads[static_cast<std::size_t>(vi)]) CHECK(gv == 0.0);
  // The high branch still learns.
  double high_mag = 0.0;
  for (double gv : grads[2]) high_mag += std::abs(gv);
  CHECK(high_mag > 0.0);
}
