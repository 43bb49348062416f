#include "nlslab/params.hpp"

#include "nlslab/error.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace nlslab {

namespace mp = boost::multiprecision;

namespace {

std::optional<unsigned> exact_log2(const BigInt& c) {
  if (c <= 0) return std::nullopt;
  const unsigned m = static_cast<unsigned>(mp::msb(c));
  if (BigInt(1) << m == c) return m;
  return std::nullopt;
}

BigInt ceil_of(const Rational& x) { return -floor_of(-x); }

std::string fmt(const Real& x, int digits = 20) {
  std::ostringstream os;
  os.precision(digits);
  os << std::scientific << x;
  return os.str();
}

}  // namespace

PaperScaleReport paper_scale_params(const PaperScaleInput& in) {
  if (!(in.s > 1))
    fail(ErrorKind::config, "unsupported-s-range: s = " + to_string(in.s) +
                                " (the calculator covers s > 1)");
  if (in.C < 2) fail(ErrorKind::config, "growth factor C must be at least 2");
  if (!(in.mu > 0 && in.mu <= 1)) fail(ErrorKind::config, "mu must lie in (0, 1]");
  if (in.epsilon < 0) fail(ErrorKind::config, "epsilon must be nonnegative");
  const auto& k = in.constants;
  if (!(k.alpha > 1) || !(k.K > 0) || !(k.eta_tilde >= 0) || !(k.sigma > 0))
    fail(ErrorKind::config, "need alpha > 1, K > 0, eta_tilde >= 0, sigma > 0");

  PaperScaleReport r;
  // smallest N with 2^((s-1)(N-6)) >= C^2
  BigInt steps;
  if (auto m = exact_log2(in.C)) {
    steps = ceil_of(Rational(2 * *m) / (in.s - 1));
  } else {
    const Real x = 2 * log(to_real(in.C)) / log(Real(2)) / to_real(in.s - 1);
    const Real c = ceil(x);
    if (c - x < Real("1e-40")) fail(ErrorKind::precision_exhausted, "cannot certify the ceiling of 2 log2 C / (s - 1)");
    steps = BigInt(c);
  }
  if (steps > 100000) fail(ErrorKind::config, "N beyond the supported range");
  r.N = 6 + steps.convert_to<std::int64_t>();
  const auto N = static_cast<unsigned>(r.N);
  r.log_lambda = mp::pow(BigInt(5), N);
  const Real loglam = to_real(r.log_lambda);
  r.log10_lambda = loglam / log(Real(10));

  r.gamma = k.gamma ? *k.gamma : Rational(floor_of(in.s / (2 * k.sigma)) + 1);
  if (!(2 * r.gamma * k.sigma > in.s)) fail(ErrorKind::config, "gamma must satisfy 2 gamma sigma > s");

  const Real alphaN = pow(to_real(k.alpha), Real(N));
  r.log_R_lo = alphaN;
  r.log_R_hi = 2 * (1 + to_real(k.eta_tilde)) * alphaN;
  const Real base = -7 * log(Real(N)) - Real(N) * log(Real(72)) - 2 * (1 + to_real(in.epsilon)) * loglam;
  r.log_qpsi_max_hi = base - 2 * r.log_R_lo;
  r.log_qpsi_max_lo = base - 2 * r.log_R_hi;
  const Real logc = log(to_real(in.profile.c));
  if (in.profile.kind == ApproxProfile::Kind::log) {
    // c / log q <= e^M  <=>  log log q >= log c - M
    r.q_threshold_kind = "log_log_q";
    r.q_threshold_lo = logc - r.log_qpsi_max_hi;
    r.q_threshold_hi = logc - r.log_qpsi_max_lo;
  } else {
    // c q^-tau <= e^M  <=>  log q >= (log c - M) / tau
    r.q_threshold_kind = "log_q";
    const Real tau = to_real(in.profile.tau);
    r.q_threshold_lo = (logc - r.log_qpsi_max_hi) / tau;
    r.q_threshold_hi = (logc - r.log_qpsi_max_lo) / tau;
  }

  r.log_T = 2 * loglam + log(to_real(k.K) * to_real(r.gamma) * Real(N) * Real(N));
  r.log10_T = r.log_T / log(Real(10));
  r.beta = log(r.log_T) / log(to_real(in.C));
  if (in.profile.kind == ApproxProfile::Kind::power && in.profile.tau > 2 * in.s) {
    const Real gap = to_real(in.profile.tau - 2 * in.s);
    r.beta_tilde = log(gap * r.log_T) / log(to_real(in.C) / to_real(in.mu));
  }
  return r;
}

std::string to_json(const PaperScaleReport& r, const PaperScaleInput& in) {
  nlohmann::ordered_json j;
  j["schema"] = "nlslab.params.v1";
  j["input"] = {{"C", in.C.str()},
                {"mu", to_string(in.mu)},
                {"s", to_string(in.s)},
                {"profile", in.profile.to_string()},
                {"epsilon", to_string(in.epsilon)}};
  j["constants"] = {{"alpha", to_string(in.constants.alpha)},
                    {"K", to_string(in.constants.K)},
                    {"eta_tilde", to_string(in.constants.eta_tilde)},
                    {"sigma", to_string(in.constants.sigma)},
                    {"gamma", to_string(r.gamma)}};
  j["N"] = r.N;
  j["log_lambda"] = r.log_lambda.str();
  j["log10_lambda"] = fmt(r.log10_lambda);
  j["log_R"] = {fmt(r.log_R_lo), fmt(r.log_R_hi)};
  j["log_qpsi_max"] = {fmt(r.log_qpsi_max_lo), fmt(r.log_qpsi_max_hi)};
  j["q_threshold"] = {{"kind", r.q_threshold_kind},
                      {"range", {fmt(r.q_threshold_lo), fmt(r.q_threshold_hi)}}};
  j["log_T"] = fmt(r.log_T);
  j["log10_T"] = fmt(r.log10_T);
  j["beta"] = fmt(r.beta, 12);
  j["beta_tilde"] = r.beta_tilde ? nlohmann::ordered_json(fmt(*r.beta_tilde, 12)) : nlohmann::ordered_json(nullptr);
  return j.dump(2);
}

}  // namespace nlslab
