#include "ffcone/hull.hpp"

#include <algorithm>
#include <stdexcept>

namespace ffcone {

const char* hull_case_name(HullCaseId id) {
    return id == HullCaseId::NoLargeSubspace ? "no-large-subspace" : "half-dim-subspace";
}

const char* hull_position_name(HullPosition pos) {
    switch (pos) {
        case HullPosition::Inside: return "inside";
        case HullPosition::Boundary: return "boundary";
        case HullPosition::Outside: return "outside";
    }
    return "?";
}

ExponentPair HullCase::p0(int d) {
    return ExponentPair(Rational(d - 1, d), Rational(1, d));
}

ExponentPair HullCase::p1(int d) {
    return ExponentPair(Rational(d - 1, d), Rational(1, d - 2));
}

ExponentPair HullCase::p2(int d) {
    const long long den = static_cast<long long>(d) * d - 2 * d + 2;
    return ExponentPair(Rational(static_cast<long long>(d) * d - 3 * d + 2, den),
                        Rational(d - 2, den));
}

HullCase HullCase::no_large_subspace(int d) {
    if (d < 3) throw std::invalid_argument("DimensionTooSmall: hull needs d >= 3");
    return HullCase{HullCaseId::NoLargeSubspace, d,
                    {ExponentPair(Rational(0), Rational(0)),
                     ExponentPair(Rational(0), Rational(1)),
                     ExponentPair(Rational(d - 1, d), Rational(1)), p0(d)}};
}

HullCase HullCase::half_dim_subspace(int d) {
    if (d < 3) throw std::invalid_argument("DimensionTooSmall: hull needs d >= 3");
    return HullCase{HullCaseId::HalfDimSubspace, d,
                    {ExponentPair(Rational(0), Rational(0)),
                     ExponentPair(Rational(0), Rational(1)),
                     ExponentPair(Rational(d - 1, d), Rational(1)), p1(d), p2(d)}};
}

namespace {

struct Pt {
    Rational x, y;
    bool operator==(const Pt& o) const { return x == o.x && y == o.y; }
};

Rational cross(const Pt& o, const Pt& a, const Pt& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Monotone chain in exact arithmetic; collinear points are dropped so
// every output vertex is extreme.
std::vector<Pt> convex_hull(std::vector<Pt> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const Pt& a, const Pt& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Pt> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= Rational(0)) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= Rational(0)) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace

HullPosition hull_classify(const ExponentPair& pair, const HullCase& hull_case) {
    std::vector<Pt> pts;
    pts.reserve(hull_case.vertices.size());
    for (const auto& v : hull_case.vertices) pts.push_back({v.inv_p, v.inv_r});
    const std::vector<Pt> hull = convex_hull(std::move(pts));

    const Pt p{pair.inv_p, pair.inv_r};
    if (hull.size() == 1) return hull[0] == p ? HullPosition::Boundary : HullPosition::Outside;
    if (hull.size() == 2) {
        const Rational c = cross(hull[0], hull[1], p);
        if (c != Rational(0)) return HullPosition::Outside;
        const bool within =
            std::min(hull[0].x, hull[1].x) <= p.x && p.x <= std::max(hull[0].x, hull[1].x) &&
            std::min(hull[0].y, hull[1].y) <= p.y && p.y <= std::max(hull[0].y, hull[1].y);
        return within ? HullPosition::Boundary : HullPosition::Outside;
    }

    bool on_edge = false;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Pt& a = hull[i];
        const Pt& b = hull[(i + 1) % hull.size()];
        const Rational c = cross(a, b, p);
        if (c < Rational(0)) return HullPosition::Outside;
        if (c == Rational(0)) on_edge = true;
    }
    return on_edge ? HullPosition::Boundary : HullPosition::Inside;
}

ExponentPair hull_centroid(const HullCase& hull_case) {
    Rational sx(0), sy(0);
    for (const auto& v : hull_case.vertices) {
        sx += v.inv_p;
        sy += v.inv_r;
    }
    const Rational n(static_cast<long long>(hull_case.vertices.size()));
    return ExponentPair(sx / n, sy / n);
}

}  // namespace ffcone
