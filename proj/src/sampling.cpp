#include "dani/sampling.hpp"

namespace dani {

FieldElem random_field_elem(Rng& rng, const FieldSpec& spec, bool nonzero) {
    if (spec.kind == FieldSpec::Kind::prime_field) {
        std::uint64_t p = spec.characteristic;
        std::uint64_t lo = nonzero ? 1 : 0;
        return FieldElem::from_int(spec,
                                   static_cast<long long>(lo + rng.next() % (p - lo)));
    }
    long num = static_cast<long>(rng.range(nonzero ? 1 : 0, 9));
    if (nonzero && num == 0) num = 1;
    if (rng.next() & 1) num = -num;
    long den = static_cast<long>(rng.range(1, 4));
    return FieldElem::from_ratio(spec, mpz_class(num), mpz_class(den));
}

Polynomial random_polynomial(Rng& rng, const FieldSpec& field,
                             const std::shared_ptr<const Universe>& uni, int max_terms,
                             int max_exp) {
    Polynomial p(field, uni);
    int terms = static_cast<int>(rng.range(1, max_terms));
    for (int t = 0; t < terms; ++t) {
        Monomial m(uni->size());
        for (std::size_t i = 0; i < uni->size(); ++i) {
            m[i] = static_cast<std::int32_t>(rng.range(0, max_exp));
        }
        p.add_term(m, random_field_elem(rng, field));
    }
    return p;
}

RingElement random_element(Rng& rng, const RingSpecPtr& ring, int max_terms, int max_exp) {
    return ring->element(
        random_polynomial(rng, ring->field(), ring->nf_universe(), max_terms, max_exp));
}

} // namespace dani
