#pragma once

// Exact scalars: prime fields GF(p) with runtime modulus, and arbitrary
// precision rationals. These are the only two coefficient domains in the
// library; no approximate arithmetic exists anywhere.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace grex {

using Int = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct InvalidDescriptor : Error {
    using Error::Error;
};
struct CapExceeded : Error {
    BigInt bound;
    CapExceeded(const std::string& msg, BigInt b) : Error(msg), bound(std::move(b)) {}
};
struct Infeasible : Error {
    using Error::Error;
};
struct NotStandardExtension : Error {
    std::string counterexample;  // canonical JSON of the first failing point
    NotStandardExtension(const std::string& msg, std::string ce)
        : Error(msg), counterexample(std::move(ce)) {}
};

inline bool is_prime(Int p) {
    if (p < 2) return false;
    for (Int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// Runtime tag for the coefficient field: p > 0 selects GF(p), p == 0 selects Q.
struct FieldSpec {
    Int p = 0;

    bool rational() const { return p == 0; }
    bool finite() const { return p > 0; }
    Int characteristic() const { return p; }
    bool operator==(const FieldSpec&) const = default;

    static FieldSpec gf(Int p) {
        if (!is_prime(p)) throw InvalidDescriptor("field modulus must be prime, got " + std::to_string(p));
        return FieldSpec{p};
    }
    static FieldSpec rationals() { return FieldSpec{0}; }

    std::string name() const { return rational() ? "Q" : "GF(" + std::to_string(p) + ")"; }
};

/// Element of GF(p). The modulus travels with the value so that scalars are
/// self-contained; mixed-modulus arithmetic throws.
class Fp {
public:
    using Ctx = Int;  // the prime
    static constexpr bool finite = true;

    Fp() : v_(0), p_(0) {}
    Fp(Int v, Int p) : p_(p) {
        if (p < 2) throw InvalidDescriptor("GF modulus must be >= 2");
        v_ = v % p;
        if (v_ < 0) v_ += p;
    }

    Int value() const { return v_; }
    Int modulus() const { return p_; }

    static Fp zero(Ctx p) { return Fp(0, p); }
    static Fp one(Ctx p) { return Fp(1, p); }
    static Fp from_int(Int n, Ctx p) { return Fp(n, p); }
    static BigInt cardinality(Ctx p) { return BigInt(p); }
    static Int characteristic(Ctx p) { return p; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Fp operator-() const { return v_ == 0 ? *this : raw(p_ - v_, p_); }
    Fp operator+(const Fp& o) const {
        check(o);
        Int s = v_ + o.v_;
        if (s >= p_) s -= p_;
        return raw(s, p_);
    }
    Fp operator-(const Fp& o) const {
        check(o);
        Int s = v_ - o.v_;
        if (s < 0) s += p_;
        return raw(s, p_);
    }
    Fp operator*(const Fp& o) const {
        check(o);
        return raw((v_ * o.v_) % p_, p_);
    }
    Fp inverse() const {
        if (v_ == 0) throw Error("division by zero in GF(p)");
        // extended Euclid
        Int t = 0, nt = 1, r = p_, nr = v_;
        while (nr != 0) {
            Int q = r / nr;
            Int tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        if (t < 0) t += p_;
        return raw(t, p_);
    }
    Fp operator/(const Fp& o) const { return *this * o.inverse(); }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }
    // lexicographic value order, used by canonical enumeration
    bool operator<(const Fp& o) const { return v_ < o.v_; }

    std::string str() const { return std::to_string(v_); }

private:
    static Fp raw(Int v, Int p) {
        Fp x;
        x.v_ = v;
        x.p_ = p;
        return x;
    }
    void check(const Fp& o) const {
        if (p_ != o.p_) throw DimensionMismatch("GF(p) modulus mismatch");
    }
    Int v_;
    Int p_;
};

/// Arbitrary precision rational; a thin wrapper so GF(p) and Q share one API.
class Rat {
public:
    struct Ctx {
        bool operator==(const Ctx&) const = default;
    };
    static constexpr bool finite = false;

    Rat() : v_(0) {}
    explicit Rat(BigRat v) : v_(std::move(v)) {}
    Rat(Int num, Int den) {
        if (den == 0) throw Error("zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        v_ = BigRat(num, den);
    }

    const BigRat& value() const { return v_; }

    static Rat zero(Ctx) { return Rat(); }
    static Rat one(Ctx) { return Rat(BigRat(1)); }
    static Rat from_int(Int n, Ctx) { return Rat(BigRat(n)); }
    static Int characteristic(Ctx) { return 0; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Rat operator-() const { return Rat(BigRat(-v_)); }
    Rat operator+(const Rat& o) const { return Rat(BigRat(v_ + o.v_)); }
    Rat operator-(const Rat& o) const { return Rat(BigRat(v_ - o.v_)); }
    Rat operator*(const Rat& o) const { return Rat(BigRat(v_ * o.v_)); }
    Rat inverse() const {
        if (is_zero()) throw Error("division by zero in Q");
        return Rat(BigRat(1 / v_));
    }
    Rat operator/(const Rat& o) const { return *this * o.inverse(); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    bool operator!=(const Rat& o) const { return v_ != o.v_; }
    bool operator<(const Rat& o) const { return v_ < o.v_; }

    /// "a/b" in lowest terms, positive denominator
    std::string str() const {
        return numerator(v_).str() + "/" + denominator(v_).str();
    }

private:
    BigRat v_;
};

template <class K>
FieldSpec field_spec_of(typename K::Ctx ctx);

template <>
inline FieldSpec field_spec_of<Fp>(Fp::Ctx p) { return FieldSpec::gf(p); }
template <>
inline FieldSpec field_spec_of<Rat>(Rat::Ctx) { return FieldSpec::rationals(); }

}  // namespace grex
