#ifndef FRACVAL_SERIES_HPP
#define FRACVAL_SERIES_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fracval/point.hpp"

namespace fracval {

using Rational = mpq_class;

/// Throws ParseError on anything but an integer or "p/q" with q != 0.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

class ZeroDivisor : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TruncationInconclusive : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Power series known modulo t^T. `exact` marks a polynomial whose omitted
/// tail is known to vanish.
class Series {
public:
    Series() = default;
    explicit Series(std::size_t truncation, bool exact = true);
    Series(std::vector<Rational> coeffs, std::size_t truncation, bool exact = true);

    static Series monomial(std::size_t exponent, std::size_t truncation, Rational c = 1);
    static Series constant(const Rational& c, std::size_t truncation);

    std::size_t truncation() const noexcept { return coeffs_.size(); }
    bool exact() const noexcept { return exact_; }
    const Rational& operator[](std::size_t k) const { return coeffs_[k]; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    /// First nonzero exponent below the truncation.
    std::optional<std::size_t> order() const;
    /// Same series viewed modulo a different power of t.
    Series retruncated(std::size_t truncation) const;

    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator*(const Rational& c, const Series& a);
    friend bool operator==(const Series& a, const Series& b);

private:
    std::vector<Rational> coeffs_;
    bool exact_ = true;
    std::size_t degree_bound_ = 0;  // exact only: coefficients vanish from here on
};

/// One series per branch, all with the same truncation.
struct BranchVector {
    std::vector<Series> components;

    std::size_t rank() const noexcept { return components.size(); }
    std::size_t truncation() const;
    BranchVector retruncated(std::size_t truncation) const;
};

BranchVector operator*(const BranchVector& a, const BranchVector& b);

/// Orders of vanishing per branch. ZeroDivisor when an exact component is 0,
/// TruncationInconclusive when an inexact one vanishes below the truncation.
Point value(const BranchVector& h);

}  // namespace fracval

#endif  // FRACVAL_SERIES_HPP
