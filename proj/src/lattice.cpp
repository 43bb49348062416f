#include "nlslab/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace nlslab {

double Mode::length() const {
  return std::hypot(static_cast<double>(j), static_cast<double>(k));
}

double Mode::bracket() const { return std::max(1.0, length()); }

std::string Mode::to_string() const {
  return "(" + std::to_string(j) + "," + std::to_string(k) + ")";
}

Quartet Quartet::canonical() const {
  Quartet c = *this;
  if (c.n[2] < c.n[0]) std::swap(c.n[0], c.n[2]);
  if (c.n[3] < c.n[1]) std::swap(c.n[1], c.n[3]);
  return c;
}

int Quartet::multiplicity() const {
  return (n[0] != n[2] ? 2 : 1) * (n[1] != n[3] ? 2 : 1);
}

std::string Quartet::to_string() const {
  return "[" + n[0].to_string() + "," + n[1].to_string() + "," + n[2].to_string() + "," +
         n[3].to_string() + "]";
}

std::string to_string(i128 x) {
  if (x == 0) return "0";
  bool neg = x < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(x + 1)) + 1
                            : static_cast<unsigned __int128>(x);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace nlslab
