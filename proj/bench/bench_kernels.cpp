// Compares the serial reference multiplication kernel against the OpenMP
// kernel on random sparse polynomials, plus a normalize-heavy workload.

#include <chrono>
#include <cstdio>

#include "dani/parser.hpp"
#include "dani/ring.hpp"
#include "dani/sampling.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace dani;

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

Polynomial exact_terms(Rng& rng, const FieldSpec& field,
                       const std::shared_ptr<const Universe>& uni, int nterms, int max_exp) {
    Polynomial p(field, uni);
    while (static_cast<int>(p.num_terms()) < nterms) {
        Monomial m(uni->size());
        for (std::size_t i = 0; i < uni->size(); ++i) {
            m[i] = static_cast<std::int32_t>(rng.range(0, max_exp));
        }
        p.add_term(m, random_field_elem(rng, field, true));
    }
    return p;
}

void bench_mul(const FieldSpec& field, int nterms, int reps) {
    auto uni = Universe::make({"t1", "t2", "u", "v"});
    Rng rng(1234);
    Polynomial a = exact_terms(rng, field, uni, nterms, 14);
    Polynomial b = exact_terms(rng, field, uni, nterms, 14);

    auto t0 = std::chrono::steady_clock::now();
    kernels::TermMap ref;
    for (int i = 0; i < reps; ++i) ref = kernels::mul_serial(a.terms(), b.terms());
    double serial = ms_since(t0) / reps;

    t0 = std::chrono::steady_clock::now();
    kernels::TermMap par;
    for (int i = 0; i < reps; ++i) par = kernels::mul_openmp(a.terms(), b.terms());
    double parallel = ms_since(t0) / reps;

    bool same = ref == par;
    std::printf("multiply  %-5s %5zu x %-5zu terms  serial %8.2f ms  openmp %8.2f ms  "
                "speedup %.2fx  %s\n",
                field.str().c_str(), a.num_terms(), b.num_terms(), serial, parallel,
                serial / parallel, same ? "match" : "MISMATCH");
}

void bench_normalize(const FieldSpec& field, int nterms, int reps) {
    auto ring =
        RingSpec::make(make_ring_config(field, Family::danielewski, {2, 2}, "V^2 + T1*V + 1"));
    Rng rng(99);
    Polynomial raw = random_polynomial(rng, field, ring->nf_universe(), nterms, 8);
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) (void)ring->normalize_raw(raw);
    std::printf("normalize %-5s %5d raw terms            %8.2f ms per call\n",
                field.str().c_str(), nterms, ms_since(t0) / reps);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("openmp disabled: the parallel kernel falls back to the serial one\n");
#endif
    // Force both kernels regardless of the auto dispatch. The rationals are
    // expected to lose in parallel (every coefficient operation allocates);
    // mul_auto therefore only parallelizes prime-field multiplications.
    for (int nterms : {64, 256, 1024, 2048}) {
        bench_mul(FieldSpec::rationals(), nterms, nterms <= 256 ? 5 : 2);
        bench_mul(FieldSpec::prime_field(5), nterms, nterms <= 256 ? 5 : 2);
    }
    bench_normalize(FieldSpec::rationals(), 512, 3);
    bench_normalize(FieldSpec::prime_field(5), 512, 3);
    return 0;
}
