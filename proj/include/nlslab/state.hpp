#pragma once

// Finitely supported Fourier data with a frame tag.

#include "nlslab/lattice.hpp"
#include "nlslab/ode.hpp"

#include <array>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace nlslab {

/// physical: a_n; gauged: rho_n = a_n e^{-iGt}; rotating: r_n = rho_n e^{-i lambda(n) t}.
enum class Frame { physical, gauged, rotating };

std::string to_string(Frame f);

struct SparseFourierState {
  std::vector<Mode> modes;
  CVec amp;
  Frame frame = Frame::gauged;
  double t = 0;

  SparseFourierState() = default;
  SparseFourierState(std::vector<Mode> m, CVec a, Frame f = Frame::gauged, double time = 0);

  std::size_t size() const { return modes.size(); }
  std::optional<std::size_t> find(const Mode& n) const;
  /// Zero off the support.
  cplx value(const Mode& n) const;

 private:
  std::unordered_map<Mode, std::size_t, ModeHash> index_;
};

double ell1_norm(const SparseFourierState& s);
/// (sum |a_n|^2 <n>^{2s})^{1/2}, <n> = max(1, |n|).
double sobolev_norm(const SparseFourierState& s, double sob);
double mass(const SparseFourierState& s);
/// sum n |a_n|^2 componentwise.
std::array<double, 2> momentum(const SparseFourierState& s);

}  // namespace nlslab
