#pragma once

#include <random>
#include <vector>

#include "symdefect/polynomial.hpp"

namespace symdefect::testing {

/// Random polynomial with up to `terms` terms of total degree <= max_degree and small rational coefficients.
inline Polynomial random_polynomial(const RingPtr& ring, std::mt19937_64& rng, unsigned max_degree, int terms,
                                    int coefficient_range = 9) {
  std::uniform_int_distribution<int> coef(-coefficient_range, coefficient_range);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<std::size_t> var(0, ring->size() - 1);
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  std::vector<Term> out;
  for (int k = 0; k < terms; ++k) {
    Monomial m(ring->size());
    unsigned d = deg(rng);
    for (unsigned e = 0; e < d; ++e) {
      auto v = var(rng);
      m.set(v, m[v] + 1);
    }
    int c = coef(rng);
    if (c == 0) c = 1;
    out.push_back({m, make_rational(c, den(rng))});
  }
  return Polynomial::from_terms(ring, std::move(out));
}

inline std::vector<Complex> random_complex_point(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> p(n);
  for (auto& z : p) z = Complex(u(rng), u(rng));
  return p;
}

}  // namespace symdefect::testing
