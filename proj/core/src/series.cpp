#include "fracval/series.hpp"

#include <algorithm>

#include "fracval/errors.hpp"

namespace fracval {

Rational parse_rational(std::string_view text)
{
    const auto bad = [&] { return ParseError("bad rational '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    const auto slash = text.find('/');
    const auto digits = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!digits(num) || !digits(den) || den.front() == '-' || den.front() == '+') throw bad();
    Rational q;
    mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw bad();
    q = Rational(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Series::Series(std::size_t truncation, bool exact) : coeffs_(truncation), exact_(exact)
{
    if (truncation == 0) throw PreconditionError("series truncation must be at least 1");
}

Series::Series(std::vector<Rational> coeffs, std::size_t truncation, bool exact) : Series(truncation, exact)
{
    if (exact && coeffs.size() > truncation) {
        const bool tail_zero = std::all_of(coeffs.begin() + static_cast<std::ptrdiff_t>(truncation), coeffs.end(),
                                           [](const Rational& q) { return q == 0; });
        if (!tail_zero) exact_ = false;
    }
    for (std::size_t k = 0; k < std::min(coeffs.size(), truncation); ++k) coeffs_[k] = std::move(coeffs[k]);
    if (exact_) {
        degree_bound_ = 0;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k] != 0) degree_bound_ = k + 1;
        }
    }
}

Series Series::monomial(std::size_t exponent, std::size_t truncation, Rational c)
{
    std::vector<Rational> v(exponent + 1);
    v[exponent] = std::move(c);
    return Series(std::move(v), truncation, true);
}

Series Series::constant(const Rational& c, std::size_t truncation) { return monomial(0, truncation, c); }

std::optional<std::size_t> Series::order() const
{
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] != 0) return k;
    }
    return std::nullopt;
}

Series Series::retruncated(std::size_t truncation) const
{
    if (truncation > coeffs_.size() && !exact_) {
        throw TruncationInconclusive("cannot extend an inexact series beyond its truncation");
    }
    return Series(coeffs_, truncation, exact_);
}

namespace {

void require_same(const Series& a, const Series& b)
{
    if (a.truncation() != b.truncation()) throw PreconditionError("series truncation mismatch");
}

}  // namespace

Series operator+(const Series& a, const Series& b)
{
    require_same(a, b);
    std::vector<Rational> v(a.truncation());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] + b[k];
    return Series(std::move(v), a.truncation(), a.exact_ && b.exact_);
}

Series operator-(const Series& a, const Series& b)
{
    require_same(a, b);
    std::vector<Rational> v(a.truncation());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] - b[k];
    return Series(std::move(v), a.truncation(), a.exact_ && b.exact_);
}

Series operator*(const Series& a, const Series& b)
{
    require_same(a, b);
    const std::size_t t = a.truncation();
    std::vector<Rational> v(t);
    for (std::size_t i = 0; i < t; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j < t; ++j) {
            if (b[j] != 0) v[i + j] += a[i] * b[j];
        }
    }
    const bool exact = a.exact_ && b.exact_ && a.degree_bound_ + b.degree_bound_ <= t + 1;
    return Series(std::move(v), t, exact);
}

Series operator*(const Rational& c, const Series& a)
{
    std::vector<Rational> v(a.truncation());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = c * a[k];
    return Series(std::move(v), a.truncation(), a.exact_);
}

bool operator==(const Series& a, const Series& b) { return a.coeffs_ == b.coeffs_; }

std::size_t BranchVector::truncation() const
{
    if (components.empty()) throw PreconditionError("branch vector has no components");
    const std::size_t t = components.front().truncation();
    for (const Series& s : components) {
        if (s.truncation() != t) throw PreconditionError("branch vector truncations differ");
    }
    return t;
}

BranchVector BranchVector::retruncated(std::size_t truncation) const
{
    BranchVector out;
    for (const Series& s : components) out.components.push_back(s.retruncated(truncation));
    return out;
}

BranchVector operator*(const BranchVector& a, const BranchVector& b)
{
    if (a.rank() != b.rank()) throw PreconditionError("branch vector rank mismatch");
    BranchVector out;
    for (std::size_t k = 0; k < a.rank(); ++k) out.components.push_back(a.components[k] * b.components[k]);
    return out;
}

Point value(const BranchVector& h)
{
    if (h.components.empty()) throw PreconditionError("branch vector has no components");
    std::vector<Coord> v;
    for (std::size_t k = 0; k < h.rank(); ++k) {
        const Series& s = h.components[k];
        const auto ord = s.order();
        if (!ord) {
            const std::string where = "component " + std::to_string(k + 1);
            if (s.exact()) throw ZeroDivisor(where + " is zero");
            throw TruncationInconclusive(where + " vanishes below t^" + std::to_string(s.truncation()));
        }
        v.push_back(static_cast<Coord>(*ord));
    }
    return Point(std::move(v));
}

}  // namespace fracval
