#ifndef WHMF_QSERIES_HPP
#define WHMF_QSERIES_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace whmf {

// p-adic valuation of an exact rational. infinite == true iff x == 0.
struct PadicVal {
    bool infinite = false;
    long v = 0;
};

inline long vp_int(const mpz_class& n, long p) {
    if (n == 0) throw std::domain_error("vp_int: valuation of zero");
    if (p < 2) throw std::invalid_argument("vp_int: p must be >= 2");
    mpz_class rem;
    return static_cast<long>(
        mpz_remove(rem.get_mpz_t(), n.get_mpz_t(), mpz_class(p).get_mpz_t()));
}

inline PadicVal vp(const mpq_class& x, long p) {
    if (x == 0) return {true, 0};
    return {false, vp_int(x.get_num(), p) - vp_int(x.get_den(), p)};
}

namespace detail {

// Dense coefficient-vector product, accumulate semantics: out[i+j] += a[i]*b[j].
// out must hold la+lb-1 entries. Karatsuba above a threshold tuned for this box
// (single core, GMP rationals with mostly integer entries).
#ifndef WHMF_KARA_THRESHOLD
#define WHMF_KARA_THRESHOLD 16
#endif
inline constexpr std::size_t kara_threshold = WHMF_KARA_THRESHOLD;

inline void mul_acc(const mpq_class* a, std::size_t la, const mpq_class* b,
                    std::size_t lb, mpq_class* out) {
    if (la == 0 || lb == 0) return;
    if (std::min(la, lb) <= kara_threshold) {
        for (std::size_t i = 0; i < la; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < lb; ++j) {
                if (b[j] == 0) continue;
                out[i + j] += a[i] * b[j];
            }
        }
        return;
    }
    const std::size_t h = (std::max(la, lb) + 1) / 2;
    if (la <= h) {
        // only b splits
        mul_acc(a, la, b, h, out);
        mul_acc(a, la, b + h, lb - h, out + h);
        return;
    }
    if (lb <= h) {
        mul_acc(a, h, b, lb, out);
        mul_acc(a + h, la - h, b, lb, out + h);
        return;
    }
    const std::size_t la1 = la - h, lb1 = lb - h;  // high-part lengths, <= h
    std::vector<mpq_class> z0(2 * h - 1), z2(la1 + lb1 - 1), z1(2 * h - 1);
    mul_acc(a, h, b, h, z0.data());
    mul_acc(a + h, la1, b + h, lb1, z2.data());
    std::vector<mpq_class> sa(h), sb(h);
    for (std::size_t i = 0; i < h; ++i) {
        sa[i] = a[i];
        if (i < la1) sa[i] += a[h + i];
        sb[i] = b[i];
        if (i < lb1) sb[i] += b[h + i];
    }
    mul_acc(sa.data(), h, sb.data(), h, z1.data());
    for (std::size_t i = 0; i < z0.size(); ++i) z1[i] -= z0[i];
    for (std::size_t i = 0; i < z2.size(); ++i) z1[i] -= z2[i];
    for (std::size_t i = 0; i < z0.size(); ++i) out[i] += z0[i];
    for (std::size_t i = 0; i < z1.size(); ++i) out[h + i] += z1[i];
    for (std::size_t i = 0; i < z2.size(); ++i) out[2 * h + i] += z2[i];
}

// First L coefficients of a*b. Inputs are read up to their first L entries.
inline std::vector<mpq_class> mul_prefix(const std::vector<mpq_class>& a,
                                         const std::vector<mpq_class>& b,
                                         std::size_t L) {
    const std::size_t la = std::min(a.size(), L), lb = std::min(b.size(), L);
    if (la == 0 || lb == 0 || la + lb - 1 < L)
        throw std::logic_error("mul_prefix: operands too short for target length");
    std::vector<mpq_class> full(la + lb - 1);
    mul_acc(a.data(), la, b.data(), lb, full.data());
    full.resize(L);
    return full;
}

// First L coefficients of 1/c, requires c[0] != 0. Newton: x <- x(2 - cx).
inline std::vector<mpq_class> invert_units(const std::vector<mpq_class>& c,
                                           std::size_t L) {
    if (c.empty() || c[0] == 0)
        throw std::domain_error("invert_units: leading coefficient is zero");
    if (c.size() < L)
        throw std::domain_error("invert_units: insufficient input precision");
    std::vector<mpq_class> x{1 / c[0]};
    std::size_t m = 1;
    while (m < L) {
        const std::size_t m2 = std::min(2 * m, L);
        std::vector<mpq_class> t = mul_prefix(c, x, m2);
        for (auto& q : t) q = -q;
        t[0] += 2;
        x = mul_prefix(x, t, m2);
        m = m2;
    }
    return x;
}

// First L coefficients of v^e (e >= 0) by binary powering with truncation.
inline std::vector<mpq_class> pow_prefix(std::vector<mpq_class> v, unsigned long e,
                                         std::size_t L) {
    std::vector<mpq_class> r(L);
    r[0] = 1;
    if (v.size() > L) v.resize(L);
    while (e) {
        if (e & 1) r = mul_prefix(r, v, L);
        e >>= 1;
        if (e) v = mul_prefix(v, v, L);
    }
    return r;
}

}  // namespace detail

// Truncated Laurent series sum_{n=val}^{prec-1} c_n q^n + O(q^prec) with exact
// rational coefficients. Window [val, prec) is always non-empty. coeff(n) for
// n < val is an implicit zero; reading at or beyond prec is a hard error, not
// a silent zero. val need not index a nonzero coefficient; normalized() trims.
class QSeries {
public:
    QSeries(long val, std::vector<mpq_class> coeffs, long prec)
        : val_(val), prec_(prec), c_(std::move(coeffs)) {
        if (prec_ <= val_)
            throw std::invalid_argument("QSeries: empty window, prec <= val");
        if (static_cast<long>(c_.size()) != prec_ - val_)
            throw std::invalid_argument("QSeries: coefficient count != prec - val");
    }

    static QSeries constant(const mpq_class& c0, long prec) {
        if (prec < 1) throw std::invalid_argument("QSeries::constant: prec < 1");
        std::vector<mpq_class> v(static_cast<std::size_t>(prec));
        v[0] = c0;
        return QSeries(0, std::move(v), prec);
    }

    long val() const { return val_; }
    long prec() const { return prec_; }
    long length() const { return prec_ - val_; }

    const mpq_class& coeff(long n) const {
        if (n >= prec_) {
            throw std::out_of_range("QSeries::coeff: exponent " + std::to_string(n) +
                                    " at or beyond precision " + std::to_string(prec_));
        }
        if (n < val_) return zero_q();
        return c_[static_cast<std::size_t>(n - val_)];
    }

    const std::vector<mpq_class>& coeffs() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(),
                           [](const mpq_class& q) { return q == 0; });
    }

    bool integral() const {
        return std::all_of(c_.begin(), c_.end(),
                           [](const mpq_class& q) { return q.get_den() == 1; });
    }

    // Trims leading zeros so coeffs()[0] != 0, keeping prec. A zero series
    // collapses to the single-entry window [prec-1, prec).
    QSeries normalized() const {
        std::size_t i = 0;
        while (i < c_.size() && c_[i] == 0) ++i;
        if (i == c_.size())
            return QSeries(prec_ - 1, {mpq_class(0)}, prec_);
        if (i == 0) return *this;
        return QSeries(val_ + static_cast<long>(i),
                       std::vector<mpq_class>(c_.begin() + static_cast<long>(i), c_.end()),
                       prec_);
    }

    QSeries truncated(long new_prec) const {
        if (new_prec > prec_)
            throw std::domain_error("QSeries::truncated: extending precision");
        if (new_prec <= val_) {
            // window would be empty; everything kept is an implicit zero
            return QSeries(new_prec - 1, {mpq_class(0)}, new_prec);
        }
        return QSeries(val_,
                       std::vector<mpq_class>(c_.begin(),
                                              c_.begin() + (new_prec - val_)),
                       new_prec);
    }

    // In-place a -= c*b, requires b.val >= a.val and b.prec >= a.prec so the
    // update lands inside the stored window. Used by the elimination loops.
    void sub_scaled(const QSeries& b, const mpq_class& c) {
        if (c == 0) return;
        if (b.val_ < val_ || b.prec_ < prec_)
            throw std::domain_error("QSeries::sub_scaled: window not contained");
        const std::size_t off = static_cast<std::size_t>(b.val_ - val_);
        const std::size_t n = static_cast<std::size_t>(prec_ - b.val_);
        for (std::size_t i = 0; i < n; ++i) c_[off + i] -= c * b.c_[i];
    }

    bool operator==(const QSeries& o) const {
        return val_ == o.val_ && prec_ == o.prec_ && c_ == o.c_;
    }

private:
    static const mpq_class& zero_q() {
        static const mpq_class z(0);
        return z;
    }

    long val_;
    long prec_;
    std::vector<mpq_class> c_;
};

// True iff a and b agree on the common window [min val, min prec), with
// below-window positions read as zero.
inline bool agree(const QSeries& a, const QSeries& b) {
    const long lo = std::min(a.val(), b.val());
    const long hi = std::min(a.prec(), b.prec());
    for (long n = lo; n < hi; ++n)
        if (a.coeff(n) != b.coeff(n)) return false;
    return true;
}

inline QSeries operator+(const QSeries& a, const QSeries& b) {
    const long val = std::min(a.val(), b.val());
    const long prec = std::min(a.prec(), b.prec());
    if (prec <= val) throw std::domain_error("QSeries add: empty result window");
    std::vector<mpq_class> c(static_cast<std::size_t>(prec - val));
    for (long n = val; n < prec; ++n)
        c[static_cast<std::size_t>(n - val)] = a.coeff(n) + b.coeff(n);
    return QSeries(val, std::move(c), prec);
}

inline QSeries operator-(const QSeries& a) {
    std::vector<mpq_class> c(a.coeffs());
    for (auto& q : c) q = -q;
    return QSeries(a.val(), std::move(c), a.prec());
}

inline QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

inline QSeries operator*(const mpq_class& s, const QSeries& a) {
    std::vector<mpq_class> c(a.coeffs());
    for (auto& q : c) q *= s;
    return QSeries(a.val(), std::move(c), a.prec());
}

inline QSeries operator*(const QSeries& a, const mpq_class& s) { return s * a; }

// Product precision: prec = a.val + b.val + min(len a, len b), i.e. the
// shorter window bounds the reliable part. Result window is never renormalized.
inline QSeries operator*(const QSeries& a, const QSeries& b) {
    const std::size_t L = static_cast<std::size_t>(
        std::min(a.length(), b.length()));
    std::vector<mpq_class> c = detail::mul_prefix(a.coeffs(), b.coeffs(), L);
    const long val = a.val() + b.val();
    return QSeries(val, std::move(c), val + static_cast<long>(L));
}

// 1/a to precision prec. a must be normalized (nonzero leading coefficient);
// needs a.length() >= prec + a.val, i.e. enough known terms of a.
inline QSeries invert(const QSeries& a, long prec) {
    if (a.coeffs()[0] == 0)
        throw std::domain_error("invert: series not normalized");
    const long L = prec + a.val();
    if (L < 1) throw std::domain_error("invert: requested precision too low");
    if (a.length() < L)
        throw std::domain_error("invert: insufficient input precision");
    std::vector<mpq_class> x =
        detail::invert_units(a.coeffs(), static_cast<std::size_t>(L));
    return QSeries(-a.val(), std::move(x), prec);
}

// a^e with truncation; e < 0 inverts first (a must be normalized then).
// e == 0 gives 1 + O(q^length).
inline QSeries pow(const QSeries& a, long e, long hint_len = 0) {
    const long L = hint_len > 0 ? std::min<long>(hint_len, a.length()) : a.length();
    if (e == 0) return QSeries::constant(1, L);
    if (e < 0) {
        const QSeries inv = invert(a, -a.val() + L);
        return pow(inv, -e);
    }
    std::vector<mpq_class> c = detail::pow_prefix(
        a.coeffs(), static_cast<unsigned long>(e), static_cast<std::size_t>(L));
    const long val = a.val() * e;
    return QSeries(val, std::move(c), val + L);
}

// U_p: picks coefficients at exponents divisible by p. ceil-division keeps
// the window tight: new window [ceil(val/p), ceil(prec/p)).
inline long ceil_div(long a, long b) {
    return a / b + ((a % b != 0 && (a ^ b) >= 0) ? 1 : 0);
}

inline QSeries apply_Up(const QSeries& a, long p) {
    if (p < 2) throw std::invalid_argument("apply_Up: p must be >= 2");
    long nv = ceil_div(a.val(), p);
    const long np = ceil_div(a.prec(), p);
    if (nv >= np) nv = np - 1;  // window held zeros only; keep one implicit zero
    std::vector<mpq_class> c(static_cast<std::size_t>(np - nv));
    for (long n = nv; n < np; ++n)
        if (n * p >= a.val()) c[static_cast<std::size_t>(n - nv)] = a.coeff(n * p);
    return QSeries(nv, std::move(c), np);
}

// V_p: q -> q^p, exponent dilation by p.
inline QSeries apply_Vp(const QSeries& a, long p) {
    if (p < 2) throw std::invalid_argument("apply_Vp: p must be >= 2");
    const long nv = a.val() * p, np = a.prec() * p;
    std::vector<mpq_class> c(static_cast<std::size_t>(np - nv));
    for (long i = 0; i < a.length(); ++i) c[static_cast<std::size_t>(i * p)] = a.coeffs()[static_cast<std::size_t>(i)];
    return QSeries(nv, std::move(c), np);
}

// Serialized form, one coefficient per line:
//   qseries val=<val> prec=<prec>
//   <exponent> <num>[/<den>]
// Every stored exponent appears, zeros included, so round-trips are bit-exact.
inline std::string to_text(const QSeries& a) {
    std::string out = "qseries val=" + std::to_string(a.val()) +
                      " prec=" + std::to_string(a.prec()) + "\n";
    for (long n = a.val(); n < a.prec(); ++n) {
        out += std::to_string(n);
        out += ' ';
        out += a.coeff(n).get_str();
        out += '\n';
    }
    return out;
}

inline QSeries from_text(const std::string& text) {
    std::istringstream in(text);
    std::string tag, vtok, ptok;
    if (!(in >> tag >> vtok >> ptok) || tag != "qseries" ||
        vtok.rfind("val=", 0) != 0 || ptok.rfind("prec=", 0) != 0)
        throw std::invalid_argument("from_text: malformed header");
    const long val = std::stol(vtok.substr(4));
    const long prec = std::stol(ptok.substr(5));
    if (prec <= val) throw std::invalid_argument("from_text: prec <= val");
    std::vector<mpq_class> c(static_cast<std::size_t>(prec - val));
    for (long n = val; n < prec; ++n) {
        long e;
        std::string q;
        if (!(in >> e >> q) || e != n)
            throw std::invalid_argument("from_text: bad line for exponent " +
                                        std::to_string(n));
        mpq_class x;
        if (mpq_set_str(x.get_mpq_t(), q.c_str(), 10) != 0)
            throw std::invalid_argument("from_text: bad rational " + q);
        x.canonicalize();
        c[static_cast<std::size_t>(n - val)] = x;
    }
    std::string rest;
    if (in >> rest) throw std::invalid_argument("from_text: trailing data");
    return QSeries(val, std::move(c), prec);
}

}  // namespace whmf

#endif
