#pragma once

#include <cstdint>

#include "dani/ring.hpp"

namespace dani {

/// Deterministic splitmix64 generator: fixture runs and property tests must
/// reproduce bit-for-bit across runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [lo, hi].
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

FieldElem random_field_elem(Rng& rng, const FieldSpec& spec, bool nonzero = false);

/// Random polynomial with up to max_terms terms and per-variable exponents
/// up to max_exp.
Polynomial random_polynomial(Rng& rng, const FieldSpec& field,
                             const std::shared_ptr<const Universe>& uni, int max_terms,
                             int max_exp);

/// Random ring element obtained by normalizing a random raw polynomial.
RingElement random_element(Rng& rng, const RingSpecPtr& ring, int max_terms, int max_exp);

} // namespace dani
