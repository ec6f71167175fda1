#ifndef WHMF_LEVEL_ONE_HPP
#define WHMF_LEVEL_ONE_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "whmf/eta.hpp"
#include "whmf/qseries.hpp"

namespace whmf {

// B_k via the defining recurrence sum_{i<=n} C(n+1,i) B_i = 0, memoized.
// Odd indexes beyond 1 vanish; only even k is exposed.
inline mpq_class bernoulli(long k) {
    if (k < 0 || k % 2 != 0)
        throw std::invalid_argument("bernoulli: k must be even and >= 0");
    static std::mutex mtx;
    static std::vector<mpq_class> cache{mpq_class(1)};  // B_0
    std::lock_guard guard(mtx);
    while (static_cast<long>(cache.size()) <= k) {
        const long n = static_cast<long>(cache.size());
        mpq_class s = 0;
        mpz_class binom = 1;  // C(n+1, 0)
        for (long i = 0; i < n; ++i) {
            s += binom * cache[static_cast<std::size_t>(i)];
            binom *= (n + 1 - i);
            binom /= (i + 1);
        }
        cache.push_back(-s / binom);  // binom == C(n+1, n) = n+1
    }
    return cache[static_cast<std::size_t>(k)];
}

// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n. The same formula at k = 2 gives
// the quasimodular E_2 = 1 - 24 sum sigma_1(n) q^n; k = 0 gives 1.
inline QSeries eisenstein(long k, long prec) {
    if (k < 0 || k % 2 != 0)
        throw std::invalid_argument("eisenstein: k must be even and >= 0");
    if (prec < 1) throw std::invalid_argument("eisenstein: prec < 1");
    if (k == 0) return QSeries::constant(1, prec);
    std::vector<mpq_class> c(static_cast<std::size_t>(prec));
    c[0] = 1;
    if (prec > 1) {
        std::vector<mpz_class> sig(static_cast<std::size_t>(prec));
        mpz_class dk;
        for (long d = 1; d < prec; ++d) {
            mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d),
                          static_cast<unsigned long>(k - 1));
            for (long n = d; n < prec; n += d) sig[static_cast<std::size_t>(n)] += dk;
        }
        const mpq_class Ak = mpq_class(-2 * k) / bernoulli(k);
        for (long n = 1; n < prec; ++n)
            c[static_cast<std::size_t>(n)] = Ak * sig[static_cast<std::size_t>(n)];
    }
    return QSeries(0, std::move(c), prec);
}

namespace detail {

// Grow-only memo for a single expensive series. Rebuilds carry 25% headroom so
// a run of slightly increasing requests costs O(log) rebuilds.
struct SeriesMemo {
    std::mutex mtx;
    std::optional<QSeries> s;

    template <typename Builder>
    QSeries get(long prec, Builder&& build) {
        std::lock_guard guard(mtx);
        if (!s || s->prec() < prec) {
            const long target =
                s ? std::max(prec, s->prec() + s->prec() / 4) : prec;
            s = build(target);
        }
        return s->truncated(prec);
    }
};

}  // namespace detail

// Delta = eta(tau)^24 = q - 24q^2 + ..., window [1, prec).
inline QSeries delta(long prec) {
    if (prec < 2) throw std::invalid_argument("delta: prec < 2");
    static detail::SeriesMemo memo;
    return memo.get(prec, [](long P) {
        return eta_quotient(EtaQuotientSpec{{1, 24}}, P);
    });
}

// 1/Delta = q^-1 + 24 + ..., window [-1, prec).
inline QSeries delta_inverse(long prec) {
    if (prec < 0) throw std::invalid_argument("delta_inverse: prec < 0");
    static detail::SeriesMemo memo;
    return memo.get(prec, [](long P) { return invert(delta(P + 2), P); });
}

// j = E_4^3 / Delta = q^-1 + 744 + 196884q + ..., window [-1, prec).
inline QSeries jfunc(long prec) {
    if (prec < 0) throw std::invalid_argument("jfunc: prec < 0");
    static detail::SeriesMemo memo;
    return memo.get(prec, [](long P) {
        return pow(eisenstein(4, P + 2), 3) * delta_inverse(P + 1);
    });
}

// k = 12*ell + k' with k' in {0, 4, 6, 8, 10, 14}; unique for even k.
struct WeightSplit {
    long ell;
    long kprime;
};

inline WeightSplit weight_split(long k) {
    if (k % 2 != 0) throw std::invalid_argument("weight_split: k must be even");
    long ell = k / 12;
    long kp = k - 12 * ell;
    if (kp < 0) {
        kp += 12;
        --ell;
    }
    if (kp == 2) {  // 2 = 12*1 + (-10) is not admissible; use 14 = 12 + 2
        kp = 14;
        --ell;
    }
    return {ell, kp};
}

namespace detail {

// Canonical-basis ladder for one weight. forms[i] is f_{k, i - ell} with
// f_{k,m} = q^-m + O(q^{ell+1}); index m = -ell is the seed Delta^ell E_k'.
// Rebuilds are index-extensions at the current precision or precision bumps
// that keep only the indexes asked for, so high-precision work never drags
// stale high indexes along.
struct Ladder {
    explicit Ladder(long weight) : k(weight) {
        const WeightSplit ws = weight_split(k);
        ell = ws.ell;
        kprime = ws.kprime;
    }

    QSeries form(long m, long prec) {
        std::lock_guard guard(mtx);
        if (m < -ell)
            throw std::domain_error("canonical_form: index below -ell");
        if (prec <= ell + 1)
            throw std::invalid_argument("canonical_form: prec too small");
        if (forms.empty() || m > top || prec > target) {
            long M = m;
            if (prec <= target && !forms.empty())
                M = std::max(m, top + std::min(std::max(top, 0L), 32L) + 2);
            rebuild(M, std::max(prec, target));
        }
        return forms[static_cast<std::size_t>(m + ell)].truncated(prec);
    }

private:
    void rebuild(long M, long T) {
        // Each multiply-by-j step loses one term of precision, so the seed
        // carries T + (M + ell) + slack. Every form has length P0 - ell.
        const long P0 = T + (M + ell) + 4;
        const QSeries j = jfunc(P0 + std::abs(ell) + 2);
        forms.clear();
        forms.reserve(static_cast<std::size_t>(M + ell + 1));

        QSeries seed = [&] {
            const long LE = P0 - ell;  // window length making seed prec exactly P0
            const QSeries ek = eisenstein(kprime, LE);
            if (ell == 0) return ek;
            if (ell > 0) return pow(delta(LE + 1), ell) * ek;
            return pow(delta_inverse(LE - 1), -ell) * ek;
        }();
        if (seed.val() != ell || seed.prec() != P0 || seed.coeff(ell) != 1)
            throw std::logic_error("canonical ladder: bad seed window");
        forms.push_back(std::move(seed));
        for (long m = -ell + 1; m <= M; ++m) {
            QSeries g = forms.back() * j;
            // clear exponents (-m, ell]: integer multiples of lower forms
            for (long i = m - 1; i >= -ell; --i) {
                // copy: sub_scaled writes through g and would zero an alias
                const mpq_class c = g.coeff(-i);
                if (c == 0) continue;
                if (c.get_den() != 1)
                    throw std::logic_error(
                        "canonical ladder: non-integer elimination multiplier");
                g.sub_scaled(forms[static_cast<std::size_t>(i + ell)], c);
            }
            if (g.coeff(-m) != 1)
                throw std::logic_error("canonical ladder: leading term not q^-m");
            forms.push_back(std::move(g));
        }
        top = M;
        target = T;
    }

    std::mutex mtx;

public:
    long k, ell, kprime;

private:
    long top = -1;
    long target = 0;
    std::vector<QSeries> forms;
};

inline Ladder& ladder_for(long k) {
    static std::mutex mtx;
    static std::map<long, std::unique_ptr<Ladder>> registry;
    std::lock_guard guard(mtx);
    auto& slot = registry[k];
    if (!slot) slot = std::make_unique<Ladder>(k);
    return *slot;
}

}  // namespace detail

// f_{k,m} = q^-m + O(q^{ell+1}), the unique weakly holomorphic weight-k form
// with that principal part; exists for every m >= -ell. Built by multiplying
// up the ladder by j and clearing the gap with integer multiples.
inline QSeries canonical_form(long k, long m, long prec) {
    return detail::ladder_for(k).form(m, prec);
}

// a_k(m, n): coefficient of q^n in the tail of f_{k,m} = q^-m + sum a q^n,
// defined for n > ell. Out-of-support m (below -ell) and gap-or-leading
// exponents n <= ell yield 0 by convention: the leading q^-m is not an
// a-coefficient. Every value is an exact integer.
inline mpz_class a_coeff(long k, long m, long n) {
    const WeightSplit ws = weight_split(k);
    if (m < -ws.ell) return 0;
    if (n <= ws.ell) return 0;
    const long prec = std::max(ws.ell + 2, n + 1);
    const mpq_class c = canonical_form(k, m, prec).coeff(n);
    if (c.get_den() != 1)
        throw std::logic_error("a_coeff: non-integer coefficient");
    return c.get_num();
}

}  // namespace whmf

#endif
