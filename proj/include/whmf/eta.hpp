#ifndef WHMF_ETA_HPP
#define WHMF_ETA_HPP

#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "whmf/qseries.hpp"

namespace whmf {

// Formal product prod_d eta(d tau)^{e_d}. The fractional q-power
// (1/24) sum d*e_d must be an integer; that integer is the leading exponent.
class EtaQuotientSpec {
public:
    EtaQuotientSpec(std::initializer_list<std::pair<long, long>> factors)
        : EtaQuotientSpec(std::vector<std::pair<long, long>>(factors)) {}

    explicit EtaQuotientSpec(std::vector<std::pair<long, long>> factors)
        : factors_(std::move(factors)) {
        long s = 0;
        for (const auto& [d, e] : factors_) {
            if (d < 1) throw std::invalid_argument("EtaQuotientSpec: scale d < 1");
            s += d * e;
        }
        if (s % 24 != 0)
            throw std::invalid_argument(
                "EtaQuotientSpec: sum d*e = " + std::to_string(s) +
                " not divisible by 24");
        lead_ = s / 24;
    }

    const std::vector<std::pair<long, long>>& factors() const { return factors_; }
    long leading_exponent() const { return lead_; }

private:
    std::vector<std::pair<long, long>> factors_;
    long lead_;
};

namespace detail {

// First L coefficients of prod_{n>=1} (1 - q^{dn}), Euler pentagonal theorem:
// exponents d*g_j, g_j = j(3j -+ 1)/2, sign (-1)^j.
inline std::vector<mpq_class> euler_product(long d, std::size_t L) {
    std::vector<mpq_class> c(L);
    c[0] = 1;
    for (long j = 1;; ++j) {
        const long g1 = d * (j * (3 * j - 1)) / 2;
        const long g2 = d * (j * (3 * j + 1)) / 2;
        if (g1 >= static_cast<long>(L) && g2 >= static_cast<long>(L)) break;
        const int sign = (j % 2 == 0) ? 1 : -1;
        if (g1 < static_cast<long>(L)) c[static_cast<std::size_t>(g1)] += sign;
        if (g2 < static_cast<long>(L)) c[static_cast<std::size_t>(g2)] += sign;
    }
    return c;
}

}  // namespace detail

// Expansion of the eta quotient to O(q^prec). The window starts at the exact
// leading exponent, so prec must exceed it.
inline QSeries eta_quotient(const EtaQuotientSpec& spec, long prec) {
    const long v0 = spec.leading_exponent();
    if (prec <= v0)
        throw std::invalid_argument("eta_quotient: prec <= leading exponent");
    const std::size_t L = static_cast<std::size_t>(prec - v0);
    std::vector<mpq_class> acc(L);
    acc[0] = 1;
    for (const auto& [d, e] : spec.factors()) {
        if (e == 0) continue;
        std::vector<mpq_class> base = detail::euler_product(d, L);
        if (e < 0) base = detail::invert_units(base, L);
        acc = detail::mul_prefix(
            acc, detail::pow_prefix(std::move(base),
                                    static_cast<unsigned long>(e < 0 ? -e : e), L),
            L);
    }
    return QSeries(v0, std::move(acc), prec);
}

}  // namespace whmf

#endif
