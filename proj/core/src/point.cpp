#include "fracval/point.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "fracval/errors.hpp"

namespace fracval {

namespace {

void require_same_dim(const Point& a, const Point& b)
{
    if (a.dim() != b.dim()) {
        throw PreconditionError("dimension mismatch: " + to_string(a) + " vs " + to_string(b));
    }
}

}  // namespace

Point Point::unit(std::size_t r, std::size_t i)
{
    Point p = filled(r, 0);
    p[i] = 1;
    return p;
}

Point& Point::operator+=(const Point& other)
{
    require_same_dim(*this, other);
    for (std::size_t k = 0; k < dim(); ++k) coords_[k] += other[k];
    return *this;
}

Point& Point::operator-=(const Point& other)
{
    require_same_dim(*this, other);
    for (std::size_t k = 0; k < dim(); ++k) coords_[k] -= other[k];
    return *this;
}

Point operator+(Point a, const Point& b) { return a += b; }
Point operator-(Point a, const Point& b) { return a -= b; }

bool leq(const Point& a, const Point& b)
{
    require_same_dim(a, b);
    for (std::size_t k = 0; k < a.dim(); ++k) {
        if (a[k] > b[k]) return false;
    }
    return true;
}

bool all_less(const Point& a, const Point& b)
{
    require_same_dim(a, b);
    for (std::size_t k = 0; k < a.dim(); ++k) {
        if (a[k] >= b[k]) return false;
    }
    return true;
}

Point meet(const Point& a, const Point& b)
{
    require_same_dim(a, b);
    Point out = a;
    for (std::size_t k = 0; k < a.dim(); ++k) out[k] = std::min(a[k], b[k]);
    return out;
}

Point join(const Point& a, const Point& b)
{
    require_same_dim(a, b);
    Point out = a;
    for (std::size_t k = 0; k < a.dim(); ++k) out[k] = std::max(a[k], b[k]);
    return out;
}

std::string to_string(const Point& p)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < p.dim(); ++k) {
        if (k) os << ',';
        os << p[k];
    }
    os << ')';
    return os.str();
}

IndexSet::IndexSet(std::size_t r, std::uint32_t mask) : r_(r), mask_(mask)
{
    if (r == 0 || r > 31) throw PreconditionError("index set ambient dimension out of range");
    if ((mask & ~full_mask(r)) != 0) throw PreconditionError("index set member out of range");
}

IndexSet::IndexSet(std::size_t r, std::initializer_list<std::size_t> members) : IndexSet(r, 0U)
{
    for (std::size_t i : members) {
        if (i >= r) throw PreconditionError("index set member out of range");
        mask_ |= 1U << i;
    }
}

IndexSet IndexSet::full(std::size_t r) { return IndexSet(r, full_mask(r)); }

IndexSet IndexSet::single(std::size_t r, std::size_t i) { return IndexSet(r, {i}); }

std::size_t IndexSet::size() const noexcept { return static_cast<std::size_t>(std::popcount(mask_)); }

std::vector<std::size_t> IndexSet::members() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < r_; ++i) {
        if (contains(i)) out.push_back(i);
    }
    return out;
}

std::string to_string(const IndexSet& j)
{
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (std::size_t i : j.members()) {
        if (!first) os << ',';
        os << i + 1;
        first = false;
    }
    os << '}';
    return os.str();
}

Point project(const Point& p, const IndexSet& j)
{
    if (p.dim() != j.ambient()) throw PreconditionError("projection: dimension mismatch");
    std::vector<Coord> out;
    out.reserve(j.size());
    for (std::size_t i : j.members()) out.push_back(p[i]);
    return Point(std::move(out));
}

Box::Box(Point lo, Point hi) : lo_(std::move(lo)), hi_(std::move(hi))
{
    require_same_dim(lo_, hi_);
    if (!leq(lo_, hi_)) throw PreconditionError("empty box " + to_string(lo_) + ".." + to_string(hi_));
    const std::size_t r = lo_.dim();
    extent_.resize(r);
    stride_.resize(r);
    size_ = 1;
    for (std::size_t k = r; k-- > 0;) {
        extent_[k] = static_cast<std::size_t>(hi_[k] - lo_[k] + 1);
        stride_[k] = size_;
        size_ *= extent_[k];
    }
}

bool Box::contains(const Point& p) const { return p.dim() == dim() && leq(lo_, p) && leq(p, hi_); }

std::size_t Box::index(const Point& p) const
{
    std::size_t idx = 0;
    for (std::size_t k = 0; k < dim(); ++k) idx += static_cast<std::size_t>(p[k] - lo_[k]) * stride_[k];
    return idx;
}

Point Box::point(std::size_t index) const
{
    Point p = lo_;
    for (std::size_t k = 0; k < dim(); ++k) p[k] = coord(index, k);
    return p;
}

Point Box::clamp(Point p) const
{
    for (std::size_t k = 0; k < dim(); ++k) p[k] = std::clamp(p[k], lo_[k], hi_[k]);
    return p;
}

}  // namespace fracval
