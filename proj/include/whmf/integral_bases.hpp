#ifndef WHMF_INTEGRAL_BASES_HPP
#define WHMF_INTEGRAL_BASES_HPP

#include <stdexcept>
#include <vector>

#include "whmf/level_p.hpp"

namespace whmf {

// dim M_k(p) for even k >= 0, p in {2,3,5}.
inline long dim_mk(long k, long p) {
    require_level(p);
    if (k < 0 || k % 2 != 0)
        throw std::invalid_argument("dim_mk: k must be even and >= 0");
    switch (p) {
        case 2: return k / 4 + 1;
        case 3: return k / 3 + 1;
        default: return 2 * (k / 4) + 1;
    }
}

// Echelon basis of M_k(p): elements[n] = q^n + O(q^d), integer coefficients.
struct IntegralBasis {
    long k = 0, p = 0, d = 0;
    std::vector<QSeries> elements;
};

namespace detail {

// The monic weight-k form vanishing to order d-1, assembled from the
// weight-ladder seeds: level 2 steps by S_{4,2}, level 3 by Phi_3 Omega_6,
// level 5 by Phi_5 Lambda_4. LEN is the window length of the result.
inline QSeries ladder_top(long k, long p, long LEN) {
    const auto ETA = [&](std::initializer_list<std::pair<long, long>> fs) {
        const EtaQuotientSpec s(fs);
        return eta_quotient(s, s.leading_exponent() + LEN);
    };
    const auto one = [&] { return QSeries::constant(1, LEN); };
    if (p == 2) {
        const long a = k / 4, r = k % 4;
        const QSeries base = r == 0 ? one() : weight2_form(2, LEN);
        return base * pow(s_form(4, 2, 1 + LEN), a, LEN);
    }
    if (p == 3) {
        const long a = k / 6, r = k % 6;
        const QSeries base = r == 0   ? one()
                             : r == 2 ? weight2_form(3, LEN)
                                      : s_form(4, 3, 1 + LEN);
        return base * pow(ETA({{3, 18}, {1, -6}}), a, LEN);
    }
    const long a = k / 4, r = k % 4;
    const QSeries base = r == 0 ? one() : weight2_form(5, LEN);
    return base * pow(ETA({{5, 10}, {1, -2}}), a, LEN);
}

}  // namespace detail

// Builds the full echelon basis by descending from the top form: multiply by
// psi_p and clear the upper entries with integer multiples of the forms
// already built. A non-integer multiplier is a hard error, not a warning.
inline IntegralBasis integral_basis(long k, long p, long prec = 0) {
    const long d = dim_mk(k, p);
    if (prec == 0) prec = d + 50;
    if (prec < d + 1)
        throw std::invalid_argument("integral_basis: prec < d + 1");

    const long LEN = prec + d + 2;
    IntegralBasis out;
    out.k = k;
    out.p = p;
    out.d = d;
    out.elements.assign(static_cast<std::size_t>(d), QSeries::constant(0, 1));

    QSeries top = detail::ladder_top(k, p, LEN);
    if (top.val() != d - 1 || top.coeffs().front() != 1)
        throw std::logic_error("integral_basis: ladder top not monic at q^{d-1}");
    out.elements[static_cast<std::size_t>(d - 1)] = std::move(top);

    if (d > 1) {
        const QSeries ps = psi(p, -1 + LEN);  // window [-1, LEN - 1)
        for (long n = d - 2; n >= 0; --n) {
            QSeries cur = ps * out.elements[static_cast<std::size_t>(n + 1)];
            for (long i = n + 1; i <= d - 1; ++i) {
                // copy: sub_scaled writes through cur and would zero an alias
                const mpq_class c = cur.coeff(i);
                if (c == 0) continue;
                if (c.get_den() != 1)
                    throw std::domain_error(
                        "integral_basis: non-integer elimination multiplier");
                cur.sub_scaled(out.elements[static_cast<std::size_t>(i)], c);
            }
            if (cur.val() != n || cur.coeffs().front() != 1)
                throw std::logic_error("integral_basis: descent lost monicity");
            out.elements[static_cast<std::size_t>(n)] = std::move(cur);
        }
    }
    for (auto& e : out.elements) e = e.truncated(prec);
    return out;
}

// Window test: a holomorphic integral form in M_k(p) whose first d
// coefficients are divisible by p^s has all coefficients divisible. Returns
// the window verdict; spot-checks the conclusion on every stored coefficient
// and throws if the input contradicts it (meaning f was not in M_k(p)).
inline bool congruence_by_window(const QSeries& f, long k, long p, long s) {
    const long d = dim_mk(k, p);
    if (s < 0) throw std::invalid_argument("congruence_by_window: s < 0");
    if (f.prec() < d)
        throw std::domain_error("congruence_by_window: fewer than d coefficients");
    for (long n = f.val(); n < 0; ++n)
        if (f.coeff(n) != 0)
            throw std::domain_error("congruence_by_window: form not holomorphic");
    if (!f.integral())
        throw std::domain_error("congruence_by_window: non-integer coefficients");

    mpz_class ps;
    mpz_ui_pow_ui(ps.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(s));
    const auto divisible = [&](long n) {
        return mpz_divisible_p(f.coeff(n).get_num().get_mpz_t(),
                               ps.get_mpz_t()) != 0;
    };
    for (long n = 0; n < d; ++n)
        if (!divisible(n)) return false;
    for (long n = d; n < f.prec(); ++n)
        if (!divisible(n))
            throw std::logic_error(
                "congruence_by_window: window passed but q^" + std::to_string(n) +
                " fails; input is not a form of this weight and level");
    return true;
}

}  // namespace whmf

#endif
