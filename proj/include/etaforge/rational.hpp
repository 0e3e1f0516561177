#ifndef ETAFORGE_RATIONAL_HPP
#define ETAFORGE_RATIONAL_HPP

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace etaforge {

// Exact coefficient field for all symbolic work.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

// "p/q" string codec used by the JSON interfaces.
inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline Rat rat_from_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    if (sgn(q.get_den()) <= 0) throw std::invalid_argument("bad rational literal: " + s);
    return q;
}

// q^n for integer n (negative allowed when q != 0).
inline Rat rat_pow(const Rat& q, long n) {
    if (n == 0) return Rat(1);
    bool inv = n < 0;
    unsigned long e = inv ? -(unsigned long)n : (unsigned long)n;
    if (inv && is_zero(q)) throw std::domain_error("rat_pow: 0 to negative power");
    Rat num, den;
    mpz_pow_ui(num.get_num_mpz_t(), q.get_num_mpz_t(), e);
    mpz_set_ui(num.get_den_mpz_t(), 1);
    mpz_pow_ui(den.get_num_mpz_t(), q.get_den_mpz_t(), e);
    mpz_set_ui(den.get_den_mpz_t(), 1);
    Rat r = num / den;
    if (inv) r = Rat(1) / r;
    r.canonicalize();
    return r;
}

inline double rat_to_double(const Rat& q) { return q.get_d(); }

// Gaussian rational a + b*i.  Symbol coefficients live here; geometric
// quantities keep im == 0.
struct CRat {
    Rat re, im;

    CRat() : re(0), im(0) {}
    CRat(Rat r) : re(std::move(r)), im(0) {}
    CRat(long r) : re(r), im(0) {}
    CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static CRat I() { return CRat(Rat(0), Rat(1)); }

    bool zero() const { return is_zero(re) && is_zero(im); }

    CRat operator-() const { return CRat(-re, -im); }
    CRat& operator+=(const CRat& o) { re += o.re; im += o.im; return *this; }
    CRat& operator-=(const CRat& o) { re -= o.re; im -= o.im; return *this; }

    friend CRat operator+(CRat a, const CRat& b) { a += b; return a; }
    friend CRat operator-(CRat a, const CRat& b) { a -= b; return a; }
    friend CRat operator*(const CRat& a, const CRat& b) {
        return CRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    CRat& operator*=(const CRat& o) { *this = *this * o; return *this; }
    friend CRat operator/(const CRat& a, const CRat& b) {
        Rat n = b.re * b.re + b.im * b.im;
        if (is_zero(n)) throw std::domain_error("CRat: division by zero");
        return CRat((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
    }
    friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }

    CRat conj() const { return CRat(re, -im); }

    std::string str() const {
        if (is_zero(im)) return re.get_str();
        return re.get_str() + (sgn(im) < 0 ? "-" : "+") + abs(im).get_str() + "i";
    }
};

// i^(-k) for the 1/(i^k k!) factors in composition formulae.
inline CRat inv_i_pow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return CRat(Rat(1));
        case 1: return CRat(Rat(0), Rat(-1));
        case 2: return CRat(Rat(-1));
        default: return CRat(Rat(0), Rat(1));
    }
}

inline Rat factorial_rat(int n) {
    Rat r(1);
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

} // namespace etaforge

#endif
