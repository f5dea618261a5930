#include "dani/ring.hpp"

#include <algorithm>

namespace dani {

namespace {

// Lowercase images of the presentation variables.
std::vector<std::string> lower_tvars(Family family, int m) {
    std::vector<std::string> out;
    const char* stem = family == Family::danielewski ? "t" : "x";
    for (int i = 1; i <= m; ++i) out.push_back(stem + std::to_string(i));
    return out;
}

} // namespace

RingSpecPtr RingSpec::make(const RingConfig& config) {
    auto spec = std::make_shared<RingSpec>();
    spec->config_ = config;
    spec->init();
    return spec;
}

RingSpecPtr RingSpec::make_unchecked(FieldSpec field, Family family, std::vector<int> r,
                                     const Polynomial& defining) {
    RingConfig cfg;
    cfg.field = field;
    cfg.family = family;
    cfg.m = static_cast<int>(r.size());
    cfg.r = std::move(r);
    cfg.defining = defining.into(presentation_universe(family, cfg.m));
    auto spec = std::make_shared<RingSpec>();
    spec->config_ = std::move(cfg);
    spec->init();
    return spec;
}

RingSpecPtr RingSpec::adjoin(const std::vector<std::string>& names) const {
    for (const auto& n : names) {
        if (n == "W" || n == "W1" || n == "W2")
            throw Error("adjoin: name " + n + " is reserved for map indeterminates");
        if (nf_uni_->index_of(n)) throw Error("adjoin: variable " + n + " already present");
    }
    auto spec = std::make_shared<RingSpec>();
    spec->config_ = config_;
    spec->adjoined_ = adjoined_;
    spec->adjoined_.insert(spec->adjoined_.end(), names.begin(), names.end());
    spec->init();
    return spec;
}

void RingSpec::init() {
    const Family fam = config_.family;
    const int m = config_.m;
    tvars_ = lower_tvars(fam, m);
    uvar_ = fam == Family::danielewski ? "u" : "y";
    rest_vars_ = fam == Family::danielewski ? std::vector<std::string>{"v"}
                                            : std::vector<std::string>{"z", "t"};

    std::vector<std::string> nf_names = tvars_;
    nf_names.push_back(uvar_);
    for (const auto& s : rest_vars_) nf_names.push_back(s);
    for (const auto& s : adjoined_) nf_names.push_back(s);
    nf_uni_ = Universe::make(nf_names);

    std::vector<std::string> lau_names = tvars_;
    std::vector<bool> lau_inv(tvars_.size(), true);
    for (const auto& s : rest_vars_) {
        lau_names.push_back(s);
        lau_inv.push_back(false);
    }
    for (const auto& s : adjoined_) {
        lau_names.push_back(s);
        lau_inv.push_back(false);
    }
    laurent_uni_ = Universe::make(lau_names, lau_inv);

    // Map the uppercase presentation polynomial to lowercase images.
    auto upper = config_.poly_universe();
    std::map<std::string, Polynomial> images;
    for (int i = 0; i < m; ++i) {
        images.emplace(upper->name(static_cast<std::size_t>(i)),
                       Polynomial::variable(field(), nf_uni_, tvars_[static_cast<std::size_t>(i)]));
    }
    for (std::size_t k = 0; k < rest_vars_.size(); ++k) {
        images.emplace(upper->name(static_cast<std::size_t>(m) + k),
                       Polynomial::variable(field(), nf_uni_, rest_vars_[k]));
    }
    rhs_ = config_.defining.substitute(images, nf_uni_);
    rhs_lau_ = rhs_.into(laurent_uni_);

    u_idx_ = *nf_uni_->index_of(uvar_);
    t_idx_.clear();
    t_idx_lau_.clear();
    for (const auto& tv : tvars_) {
        t_idx_.push_back(*nf_uni_->index_of(tv));
        t_idx_lau_.push_back(*laurent_uni_->index_of(tv));
    }
    peel_idx_lau_ = *laurent_uni_->index_of(rest_vars_.front());

    // P(V) := rhs with all t-vars set to 0; d := deg in the first rest var.
    std::map<std::string, Polynomial> tzero;
    for (const auto& tv : tvars_) tzero.emplace(tv, Polynomial::zero(field(), nf_uni_));
    P_ = rhs_.substitute(tzero);
    std::size_t v_nf = *nf_uni_->index_of(rest_vars_.front());
    d_ = rhs_.degree_in(v_nf);
    Polynomial lead = rhs_.coeff_of(v_nf, d_);
    monic_v_ = d_ >= 1 && lead == Polynomial::constant(field(), nf_uni_, 1);
}

std::vector<std::string> RingSpec::generators() const {
    std::vector<std::string> out = tvars_;
    out.push_back(uvar_);
    for (const auto& s : rest_vars_) out.push_back(s);
    for (const auto& s : adjoined_) out.push_back(s);
    return out;
}

Polynomial RingSpec::relation() const {
    Polynomial t_r_u = Polynomial::from_monomial(field(), nf_uni_, t_pow_r(nf_uni_),
                                                 FieldElem::one(field()));
    Monomial mu(nf_uni_->size());
    mu[u_idx_] = 1;
    Polynomial u = Polynomial::from_monomial(field(), nf_uni_, mu, FieldElem::one(field()));
    return t_r_u * u - rhs_;
}

Monomial RingSpec::t_pow_r(const std::shared_ptr<const Universe>& uni) const {
    Monomial m(uni->size());
    for (int i = 0; i < config_.m; ++i) {
        m[*uni->index_of(tvars_[static_cast<std::size_t>(i)])] =
            config_.r[static_cast<std::size_t>(i)];
    }
    return m;
}

Polynomial RingSpec::normalize_raw(const Polynomial& raw) const {
    return normalize_over(raw.universe().get() == nf_uni_.get() ? raw : raw.into(nf_uni_));
}

Polynomial RingSpec::normalize_over(const Polynomial& raw) const {
    const auto& uni = raw.universe();
    std::size_t u_idx;
    std::vector<std::size_t> t_idx;
    Polynomial rhs_here(field(), uni);
    if (uni.get() == nf_uni_.get()) {
        u_idx = u_idx_;
        t_idx = t_idx_;
        rhs_here = rhs_;
    } else {
        auto ui = uni->index_of(uvar_);
        if (!ui) throw Error("normalize: universe lacks " + uvar_);
        u_idx = *ui;
        for (const auto& tv : tvars_) {
            auto ti = uni->index_of(tv);
            if (!ti) throw Error("normalize: universe lacks " + tv);
            t_idx.push_back(*ti);
        }
        rhs_here = rhs_.into(uni);
    }

    std::vector<std::pair<Monomial, FieldElem>> work(raw.terms().begin(), raw.terms().end());
    Polynomial out(field(), uni);
    while (!work.empty()) {
        auto [mon, c] = std::move(work.back());
        work.pop_back();
        if (c.is_zero()) continue;
        bool rewritable = mon[u_idx] >= 1;
        if (rewritable) {
            for (int i = 0; i < config_.m; ++i) {
                if (mon[t_idx[static_cast<std::size_t>(i)]] <
                    config_.r[static_cast<std::size_t>(i)]) {
                    rewritable = false;
                    break;
                }
            }
        }
        if (!rewritable) {
            out.add_term(mon, c);
            continue;
        }
        // t^a u^j ... -> t^(a-r) u^(j-1) ... * rhs; u-degree strictly drops.
        Monomial base(mon);
        base[u_idx] -= 1;
        for (int i = 0; i < config_.m; ++i) {
            base[t_idx[static_cast<std::size_t>(i)]] -= config_.r[static_cast<std::size_t>(i)];
        }
        for (const auto& [fm, fc] : rhs_here.terms()) {
            work.emplace_back(base * fm, c * fc);
        }
    }
    return out;
}

Polynomial RingSpec::laurent_of(const Polynomial& nf) const {
    Polynomial out(field(), laurent_uni_);
    // Cache of (rhs * t^-r)^j.
    std::vector<Polynomial> upow{Polynomial::constant(field(), laurent_uni_, 1)};
    Monomial t_r = t_pow_r(laurent_uni_);
    auto u_embed = [&]() {
        Polynomial e(field(), laurent_uni_);
        for (const auto& [m, c] : rhs_lau_.terms()) e.add_term(m.divided_by(t_r), c);
        return e;
    };
    Polynomial uimg = u_embed();
    for (const auto& [m, c] : nf.terms()) {
        std::int32_t j = m[u_idx_];
        while (static_cast<std::int32_t>(upow.size()) <= j) upow.push_back(upow.back() * uimg);
        Monomial rest(laurent_uni_->size());
        for (std::size_t i = 0; i < nf_uni_->size(); ++i) {
            if (m[i] == 0 || i == u_idx_) continue;
            rest[*laurent_uni_->index_of(nf_uni_->name(i))] = m[i];
        }
        Polynomial term = upow[static_cast<std::size_t>(j)] *
                          Polynomial::from_monomial(field(), laurent_uni_, rest, c);
        out += term;
    }
    return out;
}

std::optional<Polynomial> RingSpec::laurent_to_nf(const Polynomial& laurent) const {
    if (!monic_v_)
        throw Error("laurent_to_nf requires the defining polynomial monic in " +
                    rest_vars_.front());
    Polynomial L = laurent.universe().get() == laurent_uni_.get() ? laurent
                                                                  : laurent.into(laurent_uni_);
    Polynomial nf(field(), nf_uni_);
    const int m = config_.m;
    while (!L.is_zero()) {
        // Peel the top layer in the distinguished rest variable. Each Laurent
        // monomial there lifts to a unique normal-form monomial.
        std::int32_t D = L.degree_in(peel_idx_lau_);
        Polynomial layer(field(), nf_uni_);
        for (const auto& [mon, c] : L.terms()) {
            if (mon[peel_idx_lau_] != D) continue;
            std::int32_t j = 0;
            for (int i = 0; i < m; ++i) {
                std::int32_t a = mon[t_idx_lau_[static_cast<std::size_t>(i)]];
                if (a < 0) {
                    std::int32_t ri = config_.r[static_cast<std::size_t>(i)];
                    j = std::max(j, (-a + ri - 1) / ri);
                }
            }
            std::int64_t q = static_cast<std::int64_t>(D) - static_cast<std::int64_t>(j) * d_;
            if (q < 0) return std::nullopt;
            Monomial lift(nf_uni_->size());
            for (std::size_t i = 0; i < laurent_uni_->size(); ++i) {
                if (mon[i] == 0 || i == peel_idx_lau_) continue;
                lift[*nf_uni_->index_of(laurent_uni_->name(i))] = mon[i];
            }
            for (int i = 0; i < m; ++i) {
                lift[t_idx_[static_cast<std::size_t>(i)]] +=
                    j * config_.r[static_cast<std::size_t>(i)];
            }
            lift[u_idx_] = j;
            lift[*nf_uni_->index_of(rest_vars_.front())] = static_cast<std::int32_t>(q);
            if (j >= 1) {
                // Minimality of j puts some t-exponent below r, so the lifted
                // monomial is itself in normal form.
                bool witness = false;
                for (int i = 0; i < m; ++i) {
                    if (lift[t_idx_[static_cast<std::size_t>(i)]] <
                        config_.r[static_cast<std::size_t>(i)])
                        witness = true;
                }
                if (!witness) throw Error("laurent_to_nf: lift not in normal form");
            }
            layer.add_term(lift, c);
        }
        nf += layer;
        L -= laurent_of(layer);
        if (!L.is_zero() && L.degree_in(peel_idx_lau_) >= D)
            throw Error("laurent_to_nf: peel did not reduce degree"); // unreachable
    }
    return nf;
}

RingElement RingSpec::element(const Polynomial& raw) const {
    return RingElement(shared_from_this(), normalize_raw(raw));
}

Polynomial RingSpec::parse_over(std::string_view text,
                                const std::vector<std::string>& extra) const {
    // Accept both the lowercase ring generators and their uppercase
    // presentation spellings (T1 -> t1, U -> u, V -> v; X1 -> x1, ...).
    std::vector<std::string> names = nf_uni_->names();
    std::shared_ptr<const Universe> base = extra.empty() ? nf_uni_ : nf_uni_->extended(extra);
    auto upper = config_.poly_universe();
    std::size_t n_kernel = tvars_.size() + 1 + rest_vars_.size();
    std::vector<std::string> alias(n_kernel);
    for (std::size_t i = 0; i < tvars_.size(); ++i) alias[i] = upper->name(i);
    alias[tvars_.size()] = config_.family == Family::danielewski ? "U" : "Y";
    for (std::size_t k = 0; k < rest_vars_.size(); ++k) {
        alias[tvars_.size() + 1 + k] = upper->name(tvars_.size() + k);
    }
    std::vector<std::string> ext_names = base->names();
    std::vector<std::string> used_alias;
    for (std::size_t i = 0; i < n_kernel; ++i) {
        if (alias[i] != names[i] && !base->index_of(alias[i])) {
            ext_names.push_back(alias[i]);
            used_alias.push_back(alias[i]);
        }
    }
    auto ext = Universe::make(ext_names);
    Polynomial p = parse_poly(text, ext, field());
    if (!used_alias.empty()) {
        std::map<std::string, Polynomial> down;
        for (std::size_t i = 0; i < n_kernel; ++i) {
            if (alias[i] != names[i] && !base->index_of(alias[i])) {
                down.emplace(alias[i], Polynomial::variable(field(), ext, names[i]));
            }
        }
        p = p.substitute(down, ext);
    }
    return p.into(base);
}

RingElement RingSpec::parse_element(std::string_view text) const {
    return element(parse_over(text, {}));
}

RingElement RingSpec::zero() const {
    return RingElement(shared_from_this(), Polynomial::zero(field(), nf_uni_));
}

RingElement RingSpec::one() const {
    return RingElement(shared_from_this(), Polynomial::constant(field(), nf_uni_, 1));
}

RingElement RingSpec::generator(std::string_view name) const {
    return RingElement(shared_from_this(), Polynomial::variable(field(), nf_uni_, name));
}

bool RingSpec::same_presentation(const RingSpec& o) const {
    return config_.field == o.config_.field && config_.family == o.config_.family &&
           config_.m == o.config_.m && config_.r == o.config_.r &&
           config_.defining == o.config_.defining && adjoined_ == o.adjoined_;
}

void RingElement::check_same(const RingElement& o) const {
    if (ring_.get() == o.ring_.get()) return;
    if (!ring_ || !o.ring_ || !ring_->same_presentation(*o.ring_)) throw RingMismatch();
}

RingElement RingElement::operator+(const RingElement& o) const {
    check_same(o);
    return RingElement(ring_, ring_->normalize_raw(nf_ + o.nf_.into(ring_->nf_universe())));
}

RingElement RingElement::operator-(const RingElement& o) const {
    check_same(o);
    return RingElement(ring_, ring_->normalize_raw(nf_ - o.nf_.into(ring_->nf_universe())));
}

RingElement RingElement::operator*(const RingElement& o) const {
    check_same(o);
    return RingElement(ring_, ring_->normalize_raw(nf_ * o.nf_.into(ring_->nf_universe())));
}

RingElement RingElement::operator-() const { return RingElement(ring_, -nf_); }

RingElement RingElement::pow(unsigned e) const {
    RingElement acc = ring_->one();
    RingElement base(*this);
    while (e) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

bool RingElement::operator==(const RingElement& o) const {
    check_same(o);
    return nf_ == o.nf_.into(ring_->nf_universe());
}

bool laurent_eq(const RingElement& a, const RingElement& b) {
    return a.laurent() == b.laurent().into(a.ring()->laurent_universe());
}

std::optional<RingElement> divide_by_t(const RingElement& x, int i, int count) {
    const auto& ring = x.ring();
    Polynomial L = x.laurent();
    Monomial shift(ring->laurent_universe()->size());
    shift[*ring->laurent_universe()->index_of(ring->tvar(i))] = count;
    Polynomial shifted(ring->field(), ring->laurent_universe());
    for (const auto& [m, c] : L.terms()) shifted.add_term(m.divided_by(shift), c);
    auto nf = ring->laurent_to_nf(shifted);
    if (!nf) return std::nullopt;
    return RingElement(ring, *nf);
}

} // namespace dani
