#pragma once

// Coefficient rings for q-expansions: the integers (arbitrary precision) and
// prime fields F_l with l >= 5.

#include <concepts>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "arith.hpp"
#include "errors.hpp"

namespace etakit {

using BigInt = boost::multiprecision::cpp_int;

template <class R>
concept CoefficientRing = requires(const R& r, const typename R::value_type& a, std::int64_t n) {
    { r.zero() } -> std::convertible_to<typename R::value_type>;
    { r.add(a, a) } -> std::convertible_to<typename R::value_type>;
    { r.sub(a, a) } -> std::convertible_to<typename R::value_type>;
    { r.mul(a, a) } -> std::convertible_to<typename R::value_type>;
    { r.from_int(n) } -> std::convertible_to<typename R::value_type>;
    { r.is_zero(a) } -> std::convertible_to<bool>;
    { r.to_string(a) } -> std::convertible_to<std::string>;
    { r.tag() } -> std::convertible_to<std::string>;
    { r == r } -> std::convertible_to<bool>;
};

class Integers {
public:
    using value_type = BigInt;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type from_int(std::int64_t n) const { return n; }
    value_type parse(const std::string& s) const { return value_type(s); }
    bool is_zero(const value_type& a) const { return a.is_zero(); }
    std::string to_string(const value_type& a) const { return a.str(); }
    std::string tag() const { return "Z"; }

    friend bool operator==(const Integers&, const Integers&) = default;
};

/// F_l for a prime l >= 5; elements are stored as residues in [0, l).
class PrimeField {
public:
    using value_type = std::uint64_t;

    explicit PrimeField(std::int64_t ell) : ell_(static_cast<std::uint64_t>(ell)) {
        if (ell < 5 || !is_prime(ell) || ell >= (std::int64_t{1} << 31))
            throw invalid_argument("PrimeField: l must be a prime with 5 <= l < 2^31, got " +
                                   std::to_string(ell));
    }

    std::uint64_t ell() const { return ell_; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type add(value_type a, value_type b) const {
        const value_type s = a + b;
        return s >= ell_ ? s - ell_ : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + ell_ - b; }
    value_type mul(value_type a, value_type b) const { return a * b % ell_; }
    value_type neg(value_type a) const { return a == 0 ? 0 : ell_ - a; }
    value_type from_int(std::int64_t n) const {
        return static_cast<value_type>(mod_floor(n, static_cast<std::int64_t>(ell_)));
    }
    value_type from_big(const BigInt& n) const {
        BigInt r = n % ell_;
        if (r < 0) r += ell_;
        return r.convert_to<value_type>();
    }
    value_type parse(const std::string& s) const { return from_big(BigInt(s)); }
    value_type inv(value_type a) const { return inv_mod(static_cast<std::int64_t>(a), ell_); }
    value_type pow(value_type a, std::int64_t e) const {
        if (e < 0) return pow_mod(inv(a), static_cast<std::uint64_t>(-e), ell_);
        return pow_mod(a, static_cast<std::uint64_t>(e), ell_);
    }
    bool is_zero(value_type a) const { return a == 0; }
    std::string to_string(value_type a) const { return std::to_string(a); }
    std::string tag() const { return "Fp:" + std::to_string(ell_); }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint64_t ell_;
};

static_assert(CoefficientRing<Integers>);
static_assert(CoefficientRing<PrimeField>);

}  // namespace etakit
