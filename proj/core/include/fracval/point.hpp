#ifndef FRACVAL_POINT_HPP
#define FRACVAL_POINT_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace fracval {

using Coord = std::int64_t;

/// A point of Z^r. Ordering via operator<=> is lexicographic; the product
/// order used by value sets is `leq`.
class Point {
public:
    Point() = default;
    explicit Point(std::vector<Coord> coords) : coords_(std::move(coords)) {}
    Point(std::initializer_list<Coord> coords) : coords_(coords) {}

    static Point filled(std::size_t r, Coord value) { return Point(std::vector<Coord>(r, value)); }
    static Point unit(std::size_t r, std::size_t i);

    std::size_t dim() const noexcept { return coords_.size(); }
    Coord operator[](std::size_t i) const { return coords_[i]; }
    Coord& operator[](std::size_t i) { return coords_[i]; }
    std::span<const Coord> coords() const noexcept { return coords_; }

    auto begin() const noexcept { return coords_.begin(); }
    auto end() const noexcept { return coords_.end(); }

    Point& operator+=(const Point& other);
    Point& operator-=(const Point& other);

    friend auto operator<=>(const Point&, const Point&) = default;
    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<Coord> coords_;
};

Point operator+(Point a, const Point& b);
Point operator-(Point a, const Point& b);

/// Product order: a <= b in every coordinate.
bool leq(const Point& a, const Point& b);
/// Strict in every coordinate.
bool all_less(const Point& a, const Point& b);

/// Componentwise minimum. Throws std::invalid_argument on dimension mismatch.
Point meet(const Point& a, const Point& b);
/// Componentwise maximum.
Point join(const Point& a, const Point& b);

std::string to_string(const Point& p);

/// A subset of {0, ..., r-1}, stored as a bitmask. External interfaces print
/// members 1-based.
class IndexSet {
public:
    IndexSet() = default;
    IndexSet(std::size_t r, std::uint32_t mask);
    IndexSet(std::size_t r, std::initializer_list<std::size_t> members);
    static IndexSet full(std::size_t r);
    static IndexSet single(std::size_t r, std::size_t i);

    std::size_t ambient() const noexcept { return r_; }
    std::uint32_t mask() const noexcept { return mask_; }
    bool contains(std::size_t i) const noexcept { return (mask_ >> i) & 1U; }
    std::size_t size() const noexcept;
    bool empty() const noexcept { return mask_ == 0; }
    bool is_full() const noexcept { return mask_ == full_mask(r_); }
    IndexSet complement() const { return IndexSet(r_, full_mask(r_) & ~mask_); }
    std::vector<std::size_t> members() const;

    static std::uint32_t full_mask(std::size_t r) { return r >= 32 ? ~0U : ((1U << r) - 1U); }

    friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
    std::size_t r_ = 0;
    std::uint32_t mask_ = 0;
};

std::string to_string(const IndexSet& j);

/// pr_J: keeps the coordinates listed in J, in increasing index order.
Point project(const Point& p, const IndexSet& j);

/// Dense row-major indexing of the lattice box [lo, hi]. The last coordinate
/// varies fastest, so index order coincides with lexicographic order.
class Box {
public:
    Box() = default;
    Box(Point lo, Point hi);

    const Point& lo() const noexcept { return lo_; }
    const Point& hi() const noexcept { return hi_; }
    std::size_t dim() const noexcept { return lo_.dim(); }
    std::size_t size() const noexcept { return size_; }
    std::size_t extent(std::size_t k) const noexcept { return extent_[k]; }
    std::size_t stride(std::size_t k) const noexcept { return stride_[k]; }

    bool contains(const Point& p) const;
    std::size_t index(const Point& p) const;
    Point point(std::size_t index) const;
    /// Coordinate k of the point with the given linear index.
    Coord coord(std::size_t index, std::size_t k) const
    {
        return lo_[k] + static_cast<Coord>((index / stride_[k]) % extent_[k]);
    }
    /// Clamps every coordinate into [lo, hi].
    Point clamp(Point p) const;

private:
    Point lo_;
    Point hi_;
    std::vector<std::size_t> extent_;
    std::vector<std::size_t> stride_;
    std::size_t size_ = 0;
};

}  // namespace fracval

#endif  // FRACVAL_POINT_HPP
