#include "nlslab/state.hpp"

#include "nlslab/error.hpp"

#include <cmath>

namespace nlslab {

std::string to_string(Frame f) {
  switch (f) {
    case Frame::physical: return "physical";
    case Frame::gauged: return "gauged";
    case Frame::rotating: return "rotating";
  }
  return "?";
}

SparseFourierState::SparseFourierState(std::vector<Mode> m, CVec a, Frame f, double time)
    : modes(std::move(m)), amp(std::move(a)), frame(f), t(time) {
  if (modes.size() != amp.size()) fail(ErrorKind::config, "modes and amplitudes differ in length");
  for (std::size_t i = 0; i < modes.size(); ++i)
    if (!index_.emplace(modes[i], i).second)
      fail(ErrorKind::config, "duplicate mode " + modes[i].to_string());
}

std::optional<std::size_t> SparseFourierState::find(const Mode& n) const {
  if (index_.size() != modes.size()) {
    // direct member edits bypass the index
    for (std::size_t i = 0; i < modes.size(); ++i)
      if (modes[i] == n) return i;
    return std::nullopt;
  }
  auto it = index_.find(n);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

cplx SparseFourierState::value(const Mode& n) const {
  auto i = find(n);
  return i ? amp[*i] : cplx(0);
}

double ell1_norm(const SparseFourierState& s) { return ell1(s.amp); }

double sobolev_norm(const SparseFourierState& s, double sob) {
  double acc = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    double w = std::max(1.0, s.modes[i].length());
    acc += std::norm(s.amp[i]) * std::pow(w, 2 * sob);
  }
  return std::sqrt(acc);
}

double mass(const SparseFourierState& s) {
  double m = 0;
  for (const auto& a : s.amp) m += std::norm(a);
  return m;
}

std::array<double, 2> momentum(const SparseFourierState& s) {
  std::array<double, 2> p{0, 0};
  for (std::size_t i = 0; i < s.size(); ++i) {
    double w = std::norm(s.amp[i]);
    p[0] += static_cast<double>(s.modes[i].j) * w;
    p[1] += static_cast<double>(s.modes[i].k) * w;
  }
  return p;
}

}  // namespace nlslab
