#ifndef WHMF_FORMSPEC_HPP
#define WHMF_FORMSPEC_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "whmf/integral_bases.hpp"
#include "whmf/level_one.hpp"
#include "whmf/level_p.hpp"

namespace whmf {

// Colon-separated form specifier: tag[:param...]. Integer parameters follow
// the order weight, index, level where applicable.
//
//   E:k        Eisenstein series E_k
//   delta      discriminant Delta
//   j          the j-function
//   f:k:m      canonical basis form f_{k,m}
//   S:k:p      S_{k,p} = (E_k - E_k(p tau)) / A_k
//   T:k:p      T_{k,p} = (p^k E_k(p tau) - E_k) / (p^k - 1)
//   newform:W  W in {Xi8, Xi10, Omega6, Lambda4, Lambda6}
//   phi:p      (eta(p tau)/eta(tau))^lambda
//   psi:p      1/phi
//   theta:k:p  theta_{k,p} (negative k)
//   alpha:k:p  alpha_{k,p} (negative k)
//   B:k:n:p    integral-basis element B_{n,k,p} of M_k(p)
struct FormSpec {
    std::string tag;
    std::vector<std::string> params;

    // Canonical text: regenerated from parsed parts so equivalent inputs
    // share one cache key (e.g. "f:04:1" -> "f:4:1").
    std::string text() const {
        std::string s = tag;
        for (const auto& x : params) s += ":" + x;
        return s;
    }
};

namespace detail {

inline long spec_int(const std::string& s, const char* what) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("form spec: bad integer for ") +
                                    what + ": '" + s + "'");
    }
    if (used != s.size())
        throw std::invalid_argument(std::string("form spec: trailing junk in ") +
                                    what + ": '" + s + "'");
    return v;
}

}  // namespace detail

inline FormSpec parse_form_spec(const std::string& raw) {
    std::vector<std::string> parts;
    std::string cur;
    for (const char ch : raw) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.empty() || parts[0].empty())
        throw std::invalid_argument("form spec: empty tag");

    FormSpec spec;
    spec.tag = parts[0];
    const auto args = [&](std::size_t n, const char* shape) {
        if (parts.size() - 1 != n)
            throw std::invalid_argument("form spec: '" + spec.tag +
                                        "' expects the shape " + shape);
    };
    const auto push_int = [&](const std::string& s, const char* what) {
        spec.params.push_back(std::to_string(detail::spec_int(s, what)));
    };

    if (spec.tag == "E") {
        args(1, "E:k");
        push_int(parts[1], "k");
    } else if (spec.tag == "delta" || spec.tag == "j") {
        args(0, spec.tag == "delta" ? "delta" : "j");
    } else if (spec.tag == "f") {
        args(2, "f:k:m");
        push_int(parts[1], "k");
        push_int(parts[2], "m");
    } else if (spec.tag == "S" || spec.tag == "T") {
        args(2, spec.tag == "S" ? "S:k:p" : "T:k:p");
        push_int(parts[1], "k");
        push_int(parts[2], "p");
    } else if (spec.tag == "newform") {
        args(1, "newform:W");
        newform_by_name(parts[1]);  // validates the name
        spec.params.push_back(parts[1]);
    } else if (spec.tag == "phi" || spec.tag == "psi") {
        args(1, spec.tag == "phi" ? "phi:p" : "psi:p");
        push_int(parts[1], "p");
    } else if (spec.tag == "theta" || spec.tag == "alpha") {
        args(2, spec.tag == "theta" ? "theta:k:p" : "alpha:k:p");
        push_int(parts[1], "k");
        push_int(parts[2], "p");
    } else if (spec.tag == "B") {
        args(3, "B:k:n:p");
        push_int(parts[1], "k");
        push_int(parts[2], "n");
        push_int(parts[3], "p");
    } else {
        throw std::invalid_argument("form spec: unknown tag '" + spec.tag + "'");
    }
    return spec;
}

// Builds the specified form with window ending at prec. Parameter
// validation is delegated to the owning constructors.
inline QSeries build_form(const FormSpec& spec, long prec) {
    const auto P = [&](std::size_t i) {
        return detail::spec_int(spec.params[i], "param");
    };
    if (spec.tag == "E") return eisenstein(P(0), prec);
    if (spec.tag == "delta") return delta(prec);
    if (spec.tag == "j") return jfunc(prec);
    if (spec.tag == "f") return canonical_form(P(0), P(1), prec);
    if (spec.tag == "S") return s_form(P(0), P(1), prec);
    if (spec.tag == "T") return t_form(P(0), P(1), prec);
    if (spec.tag == "newform") return newform(newform_by_name(spec.params[0]), prec);
    if (spec.tag == "phi") return phi(P(0), prec);
    if (spec.tag == "psi") return psi(P(0), prec);
    if (spec.tag == "theta") return theta_alpha(P(0), P(1), prec).theta;
    if (spec.tag == "alpha") return theta_alpha(P(0), P(1), prec).alpha;
    if (spec.tag == "B") {
        const long k = P(0), n = P(1), p = P(2);
        const long d = dim_mk(k, p);
        if (n < 0 || n >= d)
            throw std::invalid_argument("form spec: B index n out of 0..d-1");
        const auto ib =
            integral_basis(k, p, std::max(prec, d + 1));
        return ib.elements[static_cast<std::size_t>(n)].truncated(prec);
    }
    throw std::invalid_argument("form spec: unknown tag '" + spec.tag + "'");
}

}  // namespace whmf

#endif
