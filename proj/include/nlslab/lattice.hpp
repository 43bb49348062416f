#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace nlslab {

using i128 = __int128;

/// Lattice index n = (j, k) of a Fourier mode.
struct Mode {
  std::int64_t j = 0;
  std::int64_t k = 0;

  friend auto operator<=>(const Mode&, const Mode&) = default;
  friend Mode operator+(Mode a, Mode b) { return {a.j + b.j, a.k + b.k}; }
  friend Mode operator-(Mode a, Mode b) { return {a.j - b.j, a.k - b.k}; }
  Mode operator-() const { return {-j, -k}; }
  i128 norm2() const { return i128(j) * j + i128(k) * k; }
  double length() const;
  /// <n> = max(1, |n|)
  double bracket() const;
  std::string to_string() const;
};

struct ModeHash {
  std::size_t operator()(const Mode& m) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(m.j) * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<std::uint64_t>(m.k) + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

inline i128 dot(Mode a, Mode b) { return i128(a.j) * b.j + i128(a.k) * b.k; }

/// Ordered quartet (n1, n2, n3, n4); the monomial is a1 conj(a2) a3 conj(a4).
struct Quartet {
  std::array<Mode, 4> n{};

  friend auto operator<=>(const Quartet&, const Quartet&) = default;
  Mode momentum() const { return n[0] - n[1] + n[2] - n[3]; }
  bool closed() const { return momentum() == Mode{0, 0}; }
  /// n2 equals n1 or n3: the relation is trivial.
  bool trivial() const { return n[1] == n[0] || n[1] == n[2]; }
  /// Sorted odd-slot pair and sorted even-slot pair.
  Quartet canonical() const;
  /// Number of distinct monomials a1 conj(a2) a3 conj(a4) that map to this
  /// canonical representative under slot swaps.
  int multiplicity() const;
  /// (n2, n1, n4, n3): the quartet of the complex-conjugate monomial.
  Quartet conjugate() const { return {{n[1], n[0], n[3], n[2]}}; }
  std::string to_string() const;
};

struct QuartetHash {
  std::size_t operator()(const Quartet& q) const noexcept {
    ModeHash h;
    std::size_t s = 0;
    for (const auto& m : q.n) s = s * 1000003u ^ h(m);
    return s;
  }
};

/// Sum of (-1)^(i+1) j_i^2 and of (-1)^(i+1) k_i^2.
struct AlternatingSums {
  i128 jj = 0;
  i128 kk = 0;
};

inline AlternatingSums alternating_sums(const Quartet& q) {
  AlternatingSums s;
  for (int i = 0; i < 4; ++i) {
    i128 sg = (i % 2 == 0) ? 1 : -1;
    s.jj += sg * i128(q.n[i].j) * q.n[i].j;
    s.kk += sg * i128(q.n[i].k) * q.n[i].k;
  }
  return s;
}

std::string to_string(i128 x);

}  // namespace nlslab
