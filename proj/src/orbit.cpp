#include "lscrystal/orbit.hpp"

#include <algorithm>

namespace lscrystal {

TwoSidedRecurrence::TwoSidedRecurrence(int coef_even, int coef_odd, Integer v0, Integer v1)
    : coef_even_(coef_even), coef_odd_(coef_odd) {
    fwd_.push_back(std::move(v0));
    fwd_.push_back(std::move(v1));
}

Integer TwoSidedRecurrence::at(long m) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (m >= 0) {
        while (fwd_.size() <= static_cast<std::size_t>(m)) {
            const long j = static_cast<long>(fwd_.size());
            Integer next = coef(j) * fwd_[j - 1] - fwd_[j - 2];
            guard_magnitude(next);
            fwd_.push_back(std::move(next));
        }
        return fwd_[static_cast<std::size_t>(m)];
    }
    while (bwd_.size() < static_cast<std::size_t>(-m)) {
        const long j = -static_cast<long>(bwd_.size()) - 1;  // index being computed
        const Integer& v1 = (j + 1 == 0) ? fwd_[0] : bwd_[static_cast<std::size_t>(-(j + 1) - 1)];
        const Integer& v2 = (j + 2 == 0) ? fwd_[0]
                            : (j + 2 > 0) ? fwd_[static_cast<std::size_t>(j + 2)]
                                          : bwd_[static_cast<std::size_t>(-(j + 2) - 1)];
        Integer next = coef(j) * v1 - v2;
        guard_magnitude(next);
        bwd_.push_back(std::move(next));
    }
    return bwd_[static_cast<std::size_t>(-m - 1)];
}

PSequence::PSequence(const CartanData& cartan, const Weight& lambda)
    : cartan_(cartan), lambda_(lambda), seq_(cartan.b, cartan.a, -lambda.c2, lambda.c1) {}

Weight PSequence::xm_lambda(long m) const {
    if (m % 2 == 0) return {p(m + 1), -p(m)};
    return {-p(m), p(m + 1)};
}

Integer PSequence::coroot_pairing(long m, int i) const {
    if (m % 2 == 0) return i == 1 ? p(m + 1) : -p(m);
    return i == 1 ? -p(m) : p(m + 1);
}

std::string to_string(OrbitKind kind) {
    switch (kind) {
        case OrbitKind::meets_dominant: return "MeetsDominant";
        case OrbitKind::meets_antidominant: return "MeetsAntidominant";
        case OrbitKind::star: return "Star";
    }
    return "?";
}

std::string to_string(FormTag tag) {
    switch (tag) {
        case FormTag::i: return "i";
        case FormTag::ii: return "ii";
        case FormTag::i_prime: return "i'";
        case FormTag::ii_prime: return "ii'";
        case FormTag::iii_prime: return "iii'";
        case FormTag::iv_prime: return "iv'";
    }
    return "?";
}

namespace {

// Canonical representative of a star orbit with |p|-valley witness n.  The
// minimum of |p| is attained on an interval of at most three indices.  For a
// positive sequence the positive-form orbit elements x_m lambda sit at even
// m and the valley's left edge picks the canonical one; a negative sequence
// is the reversed situation (the representative is an odd Weyl translate of
// the positive-form part of the same orbit), so the right edge and odd
// indices take over.  Either way the canonical weight lies in W(lambda).
void fill_canonical(const PSequence& seq, long witness, OrbitClassification& out) {
    const bool negative = seq.p(witness) < 0;
    const auto P = [&seq](long m) { return boost::multiprecision::abs(seq.p(m)); };

    long mstar;
    bool form_i;
    Integer kc, lc;
    if (!negative) {
        long left = witness;
        while (P(left - 1) == P(witness)) --left;
        form_i = (left % 2 == 0);
        mstar = form_i ? left : left - 1;  // even
        kc = P(mstar + 1);
        lc = P(mstar);
        if (form_i ? !(lc <= kc && P(mstar - 1) > lc) : !(kc < lc && kc <= P(mstar + 2)))
            throw std::logic_error("canonical form conditions failed");
    } else {
        long right = witness;
        while (P(right + 1) == P(witness)) ++right;
        form_i = (right % 2 == 0);
        mstar = form_i ? right - 1 : right;  // odd
        kc = P(mstar);
        lc = P(mstar + 1);
        if (form_i ? !(lc <= kc && P(mstar + 2) > lc) : !(kc < lc && kc <= P(mstar - 1)))
            throw std::logic_error("canonical form conditions failed");
    }

    if (form_i)
        out.form_tag = (kc == lc) ? FormTag::i_prime : FormTag::i;
    else
        out.form_tag = (lc == (seq.cartan().b - 1) * kc) ? FormTag::ii_prime : FormTag::ii;
    out.canonical = seq.xm_lambda(mstar);
    out.canonical_m = mstar;
    out.negated = negative;
}

}  // namespace

OrbitClassification classify(const CartanData& cartan, const Weight& lambda) {
    if (lambda.is_zero()) throw Error(Errc::zero_weight, "cannot classify the zero weight");

    PSequence seq(cartan, lambda);
    const std::size_t bits =
        std::max<std::size_t>(1, std::max(bit_length(lambda.c1), bit_length(lambda.c2)));
    const long cap = 4 * static_cast<long>(bits) + 8;

    const auto check_at = [&](long m) -> std::optional<OrbitClassification> {
        const Integer pm = seq.p(m);
        const Integer pm1 = seq.p(m + 1);
        if (pm <= 0 && pm1 >= 0)
            return OrbitClassification{OrbitKind::meets_dominant, m, std::nullopt, std::nullopt,
                                       false, 0};
        if (pm >= 0 && pm1 <= 0)
            return OrbitClassification{OrbitKind::meets_antidominant, m, std::nullopt,
                                       std::nullopt, false, 0};

        const Integer prev = seq.p(m - 1);
        if (pm > 0 && pm1 > 0 && prev > 0 && prev >= pm && pm <= pm1) {
            OrbitClassification out{OrbitKind::star, m, std::nullopt, std::nullopt, false, 0};
            fill_canonical(seq, m, out);
            return out;
        }
        if (pm < 0 && pm1 < 0 && prev < 0 && prev <= pm && pm >= pm1) {
            OrbitClassification out{OrbitKind::star, m, std::nullopt, std::nullopt, true, 0};
            fill_canonical(seq, m, out);
            return out;
        }
        return std::nullopt;
    };

    // Outward scan 0, 1, -1, 2, -2, ...: the first hit realizes the
    // smallest-|m| witness with ties broken toward nonnegative indices.
    for (long r = 0; r <= cap; ++r) {
        if (auto hit = check_at(r)) return *hit;
        if (r > 0) {
            if (auto hit = check_at(-r)) return *hit;
        }
    }
    throw std::logic_error("classify scan cap exceeded; valley bound violated");
}

namespace {

void require_star(const PSequence& seq) {
    if (classify(seq.cartan(), seq.lambda()).kind != OrbitKind::star)
        throw Error(Errc::not_star_orbit, "orbit meets the dominant or antidominant cone");
}

}  // namespace

HasseCover hasse_cover(const PSequence& seq, long m) {
    require_star(seq);
    return {m - 1, down_label(m)};
}

long dist(const PSequence& seq, long m, long n) {
    require_star(seq);
    if (m < n) throw Error(Errc::bad_order, "dist needs m >= n");
    return m - n;
}

bool sigma_chain_exists(const PSequence& seq, long m, long n, const Rational& sigma) {
    require_star(seq);
    if (m <= n) throw Error(Errc::bad_order, "sigma-chain needs m > n");
    if (!(sigma > 0 && sigma < 1))
        throw Error(Errc::out_of_range, "sigma must lie strictly between 0 and 1");
    for (long j = n + 1; j <= m; ++j) {
        if (!is_integral(sigma * Rational(boost::multiprecision::abs(seq.p(j))))) return false;
    }
    return true;
}

}  // namespace lscrystal
