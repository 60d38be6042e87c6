#ifndef POLYURN_RATIONAL_HPP
#define POLYURN_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace polyurn {

/**
 * Arbitrary-precision signed integer, sign-magnitude with base-2^32 limbs.
 * Only the operations the exact linear algebra needs.
 */
class BigInt {
public:
    BigInt() = default;
    BigInt(long long value);  // NOLINT(google-explicit-constructor): integer literals convert

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }

    BigInt operator-() const;
    BigInt abs() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);

    /// Truncated division: q = a/b rounded toward zero, r = a - q*b.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    friend bool operator==(const BigInt& a, const BigInt& b);
    friend bool operator<(const BigInt& a, const BigInt& b);
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

    static BigInt gcd(BigInt a, BigInt b);

    std::string to_string() const;
    double to_double() const;

private:
    int sign_ = 0;                   // -1, 0, +1
    std::vector<uint32_t> limbs_;    // little-endian, no leading zero limbs

    void trim();
    size_t bit_length() const;
    bool bit(size_t i) const;
    static int compare_magnitude(const BigInt& a, const BigInt& b);
    static std::vector<uint32_t> add_magnitude(const std::vector<uint32_t>&, const std::vector<uint32_t>&);
    // requires |a| >= |b|
    static std::vector<uint32_t> sub_magnitude(const std::vector<uint32_t>&, const std::vector<uint32_t>&);
};

/// Exact rational, always reduced with positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(BigInt numerator, BigInt denominator);
    Rational(long long numerator, long long denominator)
        : Rational(BigInt(numerator), BigInt(denominator)) {}

    const BigInt& numerator() const { return num_; }
    const BigInt& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);

    /// "p/q", or just "p" when q == 1.
    std::string to_string() const;
    double to_double() const;

private:
    BigInt num_;
    BigInt den_;  // > 0
    void reduce();
};

}  // namespace polyurn

#endif  // POLYURN_RATIONAL_HPP
