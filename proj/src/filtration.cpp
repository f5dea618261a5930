#include "dani/filtration.hpp"

#include <numeric>
#include <sstream>

namespace dani {

WeightVector WeightVector::parse(const std::string& text) {
    WeightVector w;
    std::string t_part = text;
    auto semi = text.find(';');
    if (semi != std::string::npos) {
        t_part = text.substr(0, semi);
        w.v_weight = std::stoll(text.substr(semi + 1));
    }
    std::stringstream ss(t_part);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw UsageError("weights: empty entry");
        w.t_weights.push_back(std::stoll(item));
    }
    if (w.t_weights.empty()) throw UsageError("weights: no t-weights given");
    return w;
}

std::string WeightVector::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < t_weights.size(); ++i) {
        if (i) os << ",";
        os << t_weights[i];
    }
    os << ";" << v_weight;
    return os.str();
}

Filtration::Filtration(RingSpecPtr ring, WeightVector w) : ring_(std::move(ring)), w_(std::move(w)) {
    if (ring_->family() != Family::danielewski)
        throw Error("filtration: danielewski rings only");
    if (static_cast<int>(w_.t_weights.size()) != ring_->m())
        throw Error("filtration: weight count does not match m");
    auto wd = ring_->rhs().weighted_degree(nf_weights());
    if (!wd) throw Error("filtration: zero defining polynomial");
    e_ = *wd;
    ell_ = e_;
    for (int i = 0; i < ring_->m(); ++i) {
        ell_ -= static_cast<std::int64_t>(ring_->r()[static_cast<std::size_t>(i)]) *
                w_.t_weights[static_cast<std::size_t>(i)];
    }
}

std::vector<std::optional<std::int64_t>> Filtration::laurent_weights() const {
    auto uni = ring_->laurent_universe();
    std::vector<std::optional<std::int64_t>> out(uni->size());
    for (int i = 0; i < ring_->m(); ++i) {
        out[*uni->index_of(ring_->tvar(i))] = w_.t_weights[static_cast<std::size_t>(i)];
    }
    out[*uni->index_of(ring_->rest_vars().front())] = w_.v_weight;
    return out;
}

std::vector<std::optional<std::int64_t>> Filtration::nf_weights() const {
    auto uni = ring_->nf_universe();
    std::vector<std::optional<std::int64_t>> out(uni->size());
    for (int i = 0; i < ring_->m(); ++i) {
        out[*uni->index_of(ring_->tvar(i))] = w_.t_weights[static_cast<std::size_t>(i)];
    }
    out[*uni->index_of(ring_->rest_vars().front())] = w_.v_weight;
    return out;
}

std::optional<std::int64_t> Filtration::degree(const RingElement& x) const {
    return x.laurent().weighted_degree(laurent_weights());
}

GradedRing build_gr(const Filtration& f) {
    const auto& ring = f.ring();
    const auto& cfg = ring->config();
    auto upper = cfg.poly_universe();
    std::vector<std::optional<std::int64_t>> weights(upper->size());
    for (int i = 0; i < ring->m(); ++i) {
        weights[static_cast<std::size_t>(i)] = f.weights().t_weights[static_cast<std::size_t>(i)];
    }
    weights[static_cast<std::size_t>(ring->m())] = f.weights().v_weight;

    Polynomial f_top = cfg.defining.top_form(weights);
    for (int i = 0; i < ring->m(); ++i) {
        bool all_divisible = true;
        for (const auto& [mon, c] : f_top.terms()) {
            if (mon[static_cast<std::size_t>(i)] == 0) {
                all_divisible = false;
                break;
            }
        }
        if (all_divisible) throw DivisibleTopForm(i + 1);
    }

    GradedRing gr;
    gr.ring = RingSpec::make_unchecked(cfg.field, cfg.family, cfg.r, f_top);
    gr.f_top = f_top;
    gr.monic_in_v = gr.ring->monic_in_v();
    return gr;
}

namespace {

// Weighted degree of a single normal-form monomial: the t and v weights plus
// ell per u power. Free adjoined variables are rejected.
std::int64_t nf_monomial_degree(const RingSpec& ring, const Filtration& f, const Monomial& m) {
    auto uni = ring.nf_universe();
    std::int64_t deg = 0;
    for (std::size_t i = 0; i < uni->size(); ++i) {
        if (m[i] == 0) continue;
        const std::string& name = uni->name(i);
        if (name == ring.uvar()) {
            deg += f.ell() * m[i];
        } else if (name == ring.rest_vars().front()) {
            deg += f.weights().v_weight * m[i];
        } else {
            bool is_t = false;
            for (int k = 0; k < ring.m(); ++k) {
                if (name == ring.tvar(k)) {
                    deg += f.weights().t_weights[static_cast<std::size_t>(k)] * m[i];
                    is_t = true;
                    break;
                }
            }
            if (!is_t) throw Error("leading form: no weight declared for " + name);
        }
    }
    return deg;
}

} // namespace

RingElement leading_form(const RingElement& x, const Filtration& f, const GradedRing& gr) {
    const auto& ring = *x.ring();
    if (x.is_zero()) return gr.ring->zero();
    auto dmax = f.degree(x);

    Polynomial sel(ring.field(), gr.ring->nf_universe());
    for (const auto& [m, c] : x.nf().terms()) {
        if (nf_monomial_degree(ring, f, m) == *dmax) {
            Monomial moved(gr.ring->nf_universe()->size());
            for (std::size_t i = 0; i < x.nf().universe()->size(); ++i) {
                if (m[i] != 0) moved[*gr.ring->nf_universe()->index_of(x.nf().universe()->name(i))] = m[i];
            }
            sel.add_term(moved, c);
        }
    }

    // The selection must reproduce the top layer of the Laurent embedding in
    // the graded model; a mismatch would mean the filtration degree is not
    // carried by the monomials, which the normal form rules out.
    Polynomial top = x.laurent().top_form(f.laurent_weights());
    Polynomial gr_side = gr.ring->laurent_of(sel).into(x.ring()->laurent_universe());
    if (gr_side != top)
        throw Error("leading form: graded model mismatch");
    return RingElement(gr.ring, sel);
}

HomogenizeResult homogenize_expmap(const ExpMap& phi, const Filtration& f, const GradedRing& gr,
                                   const std::vector<RingElement>& invariant_witnesses) {
    const auto& ring = phi.ring();
    if (ring.get() != f.ring().get() && !ring->same_presentation(*f.ring()))
        throw Error("homogenize: map and filtration rings differ");
    if (!ring->adjoined().empty())
        throw Error("homogenize: adjoined generators are not supported here");

    auto ext = phi.image_universe();
    std::size_t w_idx = *ext->index_of("W");

    // Candidate slope theta = max (deg c_{g,j} - deg g) / j over j >= 1.
    bool have = false;
    std::int64_t num = 0, den = 1;
    auto consider = [&](std::int64_t a, std::int64_t b) {
        if (!have || a * den > num * b) {
            num = a;
            den = b;
            have = true;
        }
    };
    for (const auto& gen : ring->generators()) {
        const Polynomial& img = phi.image(gen);
        int degw = img.degree_in(w_idx);
        if (degw == 0) continue;
        auto fd_g = f.degree(ring->generator(gen));
        for (int j = 1; j <= degw; ++j) {
            Polynomial cj = img.coeff_of(w_idx, j).into(ring->nf_universe());
            if (cj.is_zero()) continue;
            auto fd_c = f.degree(RingElement(ring, cj));
            consider(*fd_c - *fd_g, j);
        }
    }
    if (!have) throw CandidateFailed("homogenize: the map moves no generator");
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }

    // Surviving terms attain deg c - deg g = j * theta; they map to leading
    // forms with the indeterminate graded by -theta.
    auto gr_ext = gr.ring->nf_universe()->extended({"W"});
    Polynomial W = Polynomial::variable(ring->field(), gr_ext, "W");
    std::map<std::string, Polynomial> gr_images;
    for (const auto& gen : ring->generators()) {
        const Polynomial& img = phi.image(gen);
        auto fd_g = f.degree(ring->generator(gen));
        Polynomial acc =
            leading_form(ring->generator(gen), f, gr).nf().into(gr_ext);
        Polynomial wpow = W;
        for (int j = 1; j <= img.degree_in(w_idx); ++j) {
            Polynomial cj = img.coeff_of(w_idx, j).into(ring->nf_universe());
            if (!cj.is_zero()) {
                RingElement cel(ring, cj);
                auto fd_c = f.degree(cel);
                if ((*fd_c - *fd_g) * den == static_cast<std::int64_t>(j) * num) {
                    acc += leading_form(cel, f, gr).nf().into(gr_ext) * wpow;
                }
            }
            wpow = wpow * W;
        }
        gr_images.emplace(gen, acc);
    }

    HomogenizeResult result;
    result.map = ExpMap::make(gr.ring, std::move(gr_images));
    result.theta_num = num;
    result.theta_den = den;
    auto report = check_exponential(result.map);
    if (!report.ok()) throw CandidateFailed("homogenize: " + report.str());
    if (is_trivial(result.map))
        throw CandidateFailed("homogenize: induced map is trivial");
    for (const auto& x : invariant_witnesses) {
        if (!is_invariant(phi, x))
            throw CandidateFailed("homogenize: witness " + x.str() + " is not invariant under phi");
        RingElement rho_x = leading_form(x, f, gr);
        if (!is_invariant(result.map, rho_x))
            throw CandidateFailed("homogenize: leading form of witness " + x.str() +
                                  " is not invariant under the induced map");
    }
    return result;
}

} // namespace dani
