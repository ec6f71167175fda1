#ifndef WHMF_LEVEL_P_HPP
#define WHMF_LEVEL_P_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "whmf/level_one.hpp"

namespace whmf {

inline void require_level(long p) {
    if (p != 2 && p != 3 && p != 5)
        throw std::invalid_argument("level p must be one of 2, 3, 5");
}

// lambda_p = 24/(p-1): the eta-quotient exponent making Phi_p level p.
inline long lambda_p(long p) {
    if (p < 2 || 24 % (p - 1) != 0)
        throw std::invalid_argument("lambda_p: p - 1 must divide 24");
    return 24 / (p - 1);
}

// p^e as an exact rational, e of either sign.
inline mpq_class pow_pq(long p, long e) {
    mpz_class num;
    mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? mpq_class(1) / mpq_class(num) : mpq_class(num);
}

// A_k = -2k/B_k, the coefficient scale in E_k = 1 + A_k sum sigma_{k-1} q^n.
inline mpq_class eisenstein_Ak(long k) {
    return mpq_class(-2 * k) / bernoulli(k);
}

// S_{k,p} = (E_k - E_k(p tau))/A_k = q + O(q^2).
inline QSeries s_form(long k, long p, long prec) {
    require_level(p);
    if (prec < 2) throw std::invalid_argument("s_form: prec < 2");
    const QSeries e = eisenstein(k, prec);
    const QSeries ep = apply_Vp(eisenstein(k, prec), p);
    return ((e - ep) * (1 / eisenstein_Ak(k))).normalized();
}

// T_{k,p} = (p^k E_k(p tau) - E_k)/(p^k - 1) = 1 + O(q).
inline QSeries t_form(long k, long p, long prec) {
    require_level(p);
    if (prec < 1) throw std::invalid_argument("t_form: prec < 1");
    const mpq_class pk = pow_pq(p, k);
    const QSeries e = eisenstein(k, prec);
    const QSeries ep = apply_Vp(eisenstein(k, prec), p);
    return (pk * ep - e) * (1 / (pk - 1));
}

// (p E_2(p tau) - E_2)/(p - 1): holomorphic weight 2 on Gamma_0(p), constant
// term 1. The E_2 quasimodularity cancels in this combination.
inline QSeries weight2_form(long p, long prec) {
    require_level(p);
    if (prec < 1) throw std::invalid_argument("weight2_form: prec < 1");
    const QSeries e = eisenstein(2, prec);
    const QSeries ep = apply_Vp(eisenstein(2, prec), p);
    return (mpq_class(p) * ep - e) * mpq_class(1, p - 1);
}

// Phi_p = (eta(p tau)/eta(tau))^lambda = q + O(q^2).
inline QSeries phi(long p, long prec) {
    require_level(p);
    const long lam = lambda_p(p);
    return eta_quotient(EtaQuotientSpec{{p, lam}, {1, -lam}}, prec);
}

// psi_p = 1/Phi_p = q^-1 + O(1).
inline QSeries psi(long p, long prec) {
    require_level(p);
    const long lam = lambda_p(p);
    return eta_quotient(EtaQuotientSpec{{1, lam}, {p, -lam}}, prec);
}

enum class Newform { Xi8, Xi10, Omega6, Lambda4, Lambda6 };

inline Newform newform_by_name(const std::string& name) {
    static const std::map<std::string, Newform> names = {
        {"Xi8", Newform::Xi8},         {"Xi10", Newform::Xi10},
        {"Omega6", Newform::Omega6},   {"Lambda4", Newform::Lambda4},
        {"Lambda6", Newform::Lambda6},
    };
    const auto it = names.find(name);
    if (it == names.end())
        throw std::invalid_argument("unknown newform: " + name);
    return it->second;
}

// The five distinguished cusp forms: Xi8 = (eta eta_2)^8 (weight 8, level 2),
// Xi10 = S_{4,2} T_{6,2} (weight 10, level 2), Omega6 = (eta eta_3)^6
// (weight 6, level 3), Lambda4 = (eta eta_5)^4 (weight 4, level 5) and
// Lambda6 = weight2_form(5) * Lambda4 (weight 6, level 5). All begin with q.
inline QSeries newform(Newform which, long prec) {
    if (prec < 2) throw std::invalid_argument("newform: prec < 2");
    switch (which) {
        case Newform::Xi8:
            return eta_quotient(EtaQuotientSpec{{1, 8}, {2, 8}}, prec);
        case Newform::Omega6:
            return eta_quotient(EtaQuotientSpec{{1, 6}, {3, 6}}, prec);
        case Newform::Lambda4:
            return eta_quotient(EtaQuotientSpec{{1, 4}, {5, 4}}, prec);
        case Newform::Xi10:
            return (s_form(4, 2, prec + 1) * t_form(6, 2, prec + 1))
                .truncated(prec);
        case Newform::Lambda6:
            return (weight2_form(5, prec) * newform(Newform::Lambda4, prec + 1))
                .truncated(prec);
    }
    throw std::logic_error("newform: unreachable");
}

// T_p = U_p + p^{k-1} V_p on weight-k forms.
inline QSeries apply_Tp(const QSeries& f, long p, long k) {
    require_level(p);
    return apply_Up(f, p) + pow_pq(p, k - 1) * apply_Vp(f, p);
}

// Expansion controlling the 0-cusp of f|U_p for level-one f of weight k:
//   p (p tau)^k-twisted pullback = -f + p (f|U_p)|V_p + p^k f|V_{p^2}.
// The leading exponent of the result is the pole order at 0 (negated).
inline QSeries fricke_Up_image(const QSeries& f, long k, long p, long prec) {
    require_level(p);
    if (f.prec() < prec)
        throw std::domain_error("fricke_Up_image: insufficient input precision");
    const QSeries mid = apply_Vp(apply_Up(f, p), p);
    const QSeries far = apply_Vp(apply_Vp(f, p), p);
    const QSeries img = -f + mpq_class(p) * mid + pow_pq(p, k) * far;
    return img.truncated(prec);
}

// theta/alpha pairing data for negative weight k: theta has a pole at
// infinity and vanishes at 0, alpha = 1 + O(q) at infinity with a pole at 0,
// and theta(-1/p tau) = mu tau^k alpha(tau). alpha = 1 (mod p^nu).
struct ThetaAlpha {
    long k = 0, p = 0;
    QSeries theta, alpha;
    mpz_class mu;
    long nu = 0;
    long pole_order = 0;  // of theta at infinity

    ThetaAlpha(long k_, long p_, QSeries th, QSeries al)
        : k(k_), p(p_), theta(std::move(th)), alpha(std::move(al)) {}
};

namespace detail {

inline const std::map<std::pair<long, long>, std::pair<long, long>>&
mu_nu_table() {
    // (k, p) -> (mu, nu)
    static const std::map<std::pair<long, long>, std::pair<long, long>> t = {
        {{-2, 2}, {-32, 3}},  {{-4, 2}, {16, 4}},   {{-6, 2}, {-512, 3}},
        {{-8, 2}, {256, 5}},  {{-12, 2}, {4096, 4}}, {{-2, 3}, {-9, 1}},
        {{-4, 3}, {81, 1}},   {{-6, 3}, {-27, 2}},  {{-8, 3}, {243, 1}},
        {{-12, 3}, {729, 2}}, {{-2, 5}, {-25, 0}},  {{-4, 5}, {5, 1}},
        {{-6, 5}, {-125, 0}}, {{-8, 5}, {25, 1}},   {{-12, 5}, {125, 1}},
    };
    return t;
}

}  // namespace detail

inline ThetaAlpha theta_alpha(long k, long p, long prec) {
    require_level(p);
    const auto row = detail::mu_nu_table().find({k, p});
    if (row == detail::mu_nu_table().end())
        throw std::invalid_argument("theta_alpha: k must be in {-2,-4,-6,-8,-12}");
    if (prec < 1) throw std::invalid_argument("theta_alpha: prec < 1");

    // Every factor is built with the same window length, so the product
    // keeps that length and the final truncation to prec always succeeds.
    const long LEN = prec + 24;
    const auto ETA = [&](std::initializer_list<std::pair<long, long>> fs) {
        const EtaQuotientSpec s(fs);
        return eta_quotient(s, s.leading_exponent() + LEN);
    };
    const auto NF = [&](Newform w) { return newform(w, 1 + LEN); };
    const auto Sf = [&](long kk) { return s_form(kk, p, 1 + LEN); };
    const auto Tf = [&](long kk) { return t_form(kk, p, LEN); };
    const QSeries inv_dp = ETA({{p, -24}});       // 1/Delta(p tau)
    const QSeries inv_d1 = ETA({{1, -24}});       // 1/Delta
    const long lam = lambda_p(p);

    QSeries th = QSeries::constant(1, 1), al = QSeries::constant(1, 1);
    if (p == 2) {
        switch (k) {
            case -2: th = NF(Newform::Xi10) * inv_dp; al = NF(Newform::Xi10) * inv_d1; break;
            case -4: th = NF(Newform::Xi8) * inv_dp;  al = NF(Newform::Xi8) * inv_d1;  break;
            case -6: th = Tf(6) * inv_dp;             al = Sf(6) * inv_d1;             break;
            case -8: th = Tf(4) * inv_dp;             al = Sf(4) * inv_d1;             break;
            case -12:
                th = ETA({{1, 24}, {2, -48}});
                al = ETA({{2, 24}, {1, -48}});
                break;
        }
    } else if (p == 3) {
        switch (k) {
            case -2: th = Sf(4) * NF(Newform::Omega6) * inv_dp;
                     al = Tf(4) * NF(Newform::Omega6) * inv_d1; break;
            case -4: th = Sf(4) * Tf(4) * inv_dp;
                     al = Sf(4) * Tf(4) * inv_d1; break;
            case -6: th = NF(Newform::Omega6) * inv_dp;
                     al = NF(Newform::Omega6) * inv_d1; break;
            case -8: th = Tf(4) * inv_dp; al = Sf(4) * inv_d1; break;
            case -12:
                th = ETA({{3, lam}, {1, -lam}, {1, 24}, {3, -48}});
                al = ETA({{1, lam}, {3, -lam}, {3, 24}, {1, -48}});
                break;
        }
    } else {
        switch (k) {
            case -2: th = NF(Newform::Lambda4) * NF(Newform::Lambda6) * ETA({{5, lam}, {1, -lam}}) * inv_dp;
                     al = NF(Newform::Lambda4) * NF(Newform::Lambda6) * ETA({{1, lam}, {5, -lam}}) * inv_d1; break;
            case -4: th = NF(Newform::Lambda4) * NF(Newform::Lambda4) * ETA({{5, lam}, {1, -lam}}) * inv_dp;
                     al = NF(Newform::Lambda4) * NF(Newform::Lambda4) * ETA({{1, lam}, {5, -lam}}) * inv_d1; break;
            case -6: th = NF(Newform::Lambda6) * inv_dp;
                     al = NF(Newform::Lambda6) * inv_d1; break;
            case -8: th = NF(Newform::Lambda4) * inv_dp;
                     al = NF(Newform::Lambda4) * inv_d1; break;
            case -12:
                th = ETA({{5, lam}, {1, -lam}, {1, 12}, {5, 12}, {5, -48}});
                al = ETA({{1, lam}, {5, -lam}, {5, 12}, {1, 12}, {1, -48}});
                break;
        }
    }

    if (th.prec() < prec || al.prec() < prec)
        throw std::logic_error("theta_alpha: internal precision shortfall");
    ThetaAlpha out(k, p, th.truncated(prec), al.truncated(prec));
    out.mu = row->second.first;
    out.nu = row->second.second;
    out.pole_order = -out.theta.val();
    if (out.theta.coeffs().front() != 1)
        throw std::logic_error("theta_alpha: theta not monic");
    if (out.alpha.val() != 0 || out.alpha.coeff(0) != 1)
        throw std::logic_error("theta_alpha: alpha constant term not 1");
    return out;
}

}  // namespace whmf

#endif
