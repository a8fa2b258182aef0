#include "locind/operator_model.hpp"

#include <cmath>

#include "locind/errors.hpp"

namespace locind {

namespace {

constexpr double kSymbolMargin = 1e-9;

// numerically inverted symbol, cut to the bandwidth the truncation can carry;
// coefficients become exact dyadics so downstream arithmetic stays closed
LaurentPoly approximate_inverse_symbol(const LaurentPoly& u, int K) {
  int samples = 4 * K;
  double min_abs = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    double theta = 2.0 * 3.14159265358979323846 * s / samples;
    min_abs = std::min(min_abs, std::abs(u.eval(std::polar(1.0, theta))));
  }
  if (!(min_abs > kSymbolMargin))
    fail_validation("symbol is not invertible on the circle (min modulus " +
                    std::to_string(min_abs) + " over " +
                    std::to_string(samples) + " samples)");
  int band = K / 4;
  LaurentPoly b;
  for (int k = -band; k <= band; ++k) {
    Cplx acc(0.0, 0.0);
    for (int s = 0; s < samples; ++s) {
      double theta = 2.0 * 3.14159265358979323846 * s / samples;
      Cplx z = std::polar(1.0, theta);
      acc += (Cplx(1.0, 0.0) / u.eval(z)) * std::polar(1.0, -theta * k);
    }
    acc /= double(samples);
    Rat c(bigrat_from_double(acc.real()), bigrat_from_double(acc.imag()));
    if (!c.is_zero()) b.coeffs[k] = c;
  }
  return b;
}

}  // namespace

OperatorModel make_operator_model(const LaurentPoly& symbol, int K,
                                  ScalarKind kind) {
  require(!symbol.is_zero(), "operator symbol must be nonzero");
  require(K >= 1, "truncation size must be positive");
  int band = std::max(std::abs(symbol.min_power()),
                      std::abs(symbol.max_power()));
  require(K > 2 * band,
          "truncation size " + std::to_string(K) +
              " too small for symbol bandwidth " + std::to_string(band) +
              " (need K > 2*bandwidth)");

  OperatorModel model;
  model.symbol = symbol;
  model.K = K;
  model.kind = kind;
  model.A = HardyOp(symbol);

  if (auto mono = symbol.as_monomial()) {
    auto [w, c] = *mono;
    model.winding = w;
    model.B = HardyOp(LaurentPoly::monomial(-w, c.inv()));
    model.exact_parametrix = true;
  } else if (kind == ScalarKind::rational) {
    fail_validation(
        "no exact parametrix for a multi-term symbol; rerun with float "
        "scalars for the approximate construction");
  } else {
    model.B = HardyOp(approximate_inverse_symbol(symbol, K));
    model.exact_parametrix = false;
  }
  return model;
}

ConnectingData<HardyOp> hardy_connecting(const OperatorModel& model) {
  auto data = connecting_construction<HardyOp>(
      model.A, model.B, HardyOp::identity(), HardyOp());
  if (model.exact_parametrix)
    check_internal(data.S0.is_smoothing() && data.S1.is_smoothing(),
                   "monomial parametrix must leave smoothing remainders");
  return data;
}

Rat residue_trace(const ConnectingData<HardyOp>& data) {
  if (!data.S0.is_smoothing() || !data.S1.is_smoothing())
    fail_validation(
        "residue trace needs smoothing remainders; the parametrix only "
        "inverts the symbol approximately");
  return (data.S0 * data.S0).trace() - (data.S1 * data.S1).trace();
}

FiniteSectionDiagnostics finite_section_diagnostics(
    const OperatorModel& model) {
  int K = model.K;
  Mat<Rat> a = model.A.truncate(K);
  Mat<Rat> b = model.B.truncate(K);
  auto data = connecting_construction<Mat<Rat>>(
      a, b, Mat<Rat>::identity(K), Mat<Rat>::zero(K, K));
  FiniteSectionDiagnostics diag;
  diag.K = K;
  diag.det_L = block2x2(data.L.a, data.L.b, data.L.c, data.L.d).det();
  diag.trace_P = data.P.a.trace() + data.P.d.trace();
  diag.trace_R = data.R.a.trace() + data.R.d.trace();
  return diag;
}

int fredholm_index_of(const Mat<Rat>& m) {
  int r = m.rank_exact();
  return (m.cols() - r) - (m.rows() - r);
}

int rect_shift_index(int w, int K) {
  require(2 * std::abs(w) < K,
          "rectangle too small to carry the shift: need 2|w| < K");
  int rows = K, cols = K + w;
  Mat<Rat> m = Mat<Rat>::zero(rows, cols);
  for (int i = 0; i < rows; ++i) {
    int j = i - w;
    if (j >= 0 && j < cols) m.at(i, j) = Rat(1);
  }
  return fredholm_index_of(m);
}

Mat<Cyclo> corner_to_position_kernel(
    const Mat<Rat>& corner, int n_points,
    const std::shared_ptr<const CycloContext>& ctx) {
  require(n_points >= corner.rows() && n_points >= corner.cols(),
          "position kernel needs at least as many circle points as the "
          "corner size");
  require(ctx && ctx->conductor % n_points == 0,
          "cyclotomic conductor must contain the circle size");
  long step = ctx->conductor / n_points;
  Mat<Cyclo> out(n_points, n_points);
  for (int x = 0; x < n_points; ++x)
    for (int y = 0; y < n_points; ++y) {
      Cyclo acc = Cyclo::zero();
      for (int j = 0; j < corner.rows(); ++j)
        for (int k = 0; k < corner.cols(); ++k) {
          const Rat& v = corner.at(j, k);
          if (v.is_zero()) continue;
          Cyclo phase =
              Cyclo::zeta(ctx, step * (long(x) * j - long(y) * k));
          acc += phase * Cyclo::from_rat(ctx, v);
        }
      out.at(x, y) = acc.scaled(BigRat(1, n_points));
    }
  return out;
}

Mat<Cplx> corner_to_position_kernel_float(const Mat<Rat>& corner,
                                          int n_points) {
  require(n_points >= corner.rows() && n_points >= corner.cols(),
          "position kernel needs at least as many circle points as the "
          "corner size");
  Mat<Cplx> out(n_points, n_points);
  double tau = 2.0 * 3.14159265358979323846 / n_points;
  for (int x = 0; x < n_points; ++x)
    for (int y = 0; y < n_points; ++y) {
      Cplx acc(0.0, 0.0);
      for (int j = 0; j < corner.rows(); ++j)
        for (int k = 0; k < corner.cols(); ++k) {
          const Rat& v = corner.at(j, k);
          if (v.is_zero()) continue;
          acc += std::polar(1.0, tau * (double(x) * j - double(y) * k)) *
                 v.to_complex();
        }
      out.at(x, y) = acc / double(n_points);
    }
  return out;
}

}  // namespace locind
