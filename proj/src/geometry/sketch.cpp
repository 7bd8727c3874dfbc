#include "cadgym/geometry/sketch.hpp"

#include <algorithm>
#include <cmath>

namespace cadgym::geom {

namespace {

constexpr double kPi = 3.14159265358979323846;

using LoopResult = Result<std::vector<Loop2>, KernelError>;

/// Open polyline with well-defined endpoints, ready for chaining.
struct Chain {
    std::vector<Vec2> points;  // 2+ points, first/last are the endpoints
    bool used = false;
};

Result<Unit, KernelError> validate_element(const SketchElement& element) {
    if (const auto* line = std::get_if<LineElement>(&element)) {
        if (!is_finite(line->start) || !is_finite(line->end))
            return Result<Unit, KernelError>::err(KernelError::non_finite_input,
                                                  "line has a non-finite coordinate");
        if ((line->end - line->start).norm() <= 0.0)
            return Result<Unit, KernelError>::err(KernelError::invalid_element,
                                                  "line start and end coincide");
        return Result<Unit, KernelError>::ok(Unit{});
    }
    if (const auto* arc = std::get_if<ArcElement>(&element)) {
        if (!is_finite(arc->center) || !is_finite(arc->radius) ||
            !is_finite(arc->start_angle_deg) || !is_finite(arc->end_angle_deg))
            return Result<Unit, KernelError>::err(KernelError::non_finite_input,
                                                  "arc has a non-finite parameter");
        if (arc->radius <= 0.0)
            return Result<Unit, KernelError>::err(KernelError::invalid_element,
                                                  "arc radius must be positive");
        double sweep = std::fmod(arc->end_angle_deg - arc->start_angle_deg, 360.0);
        if (sweep < 0.0) sweep += 360.0;
        if (sweep <= 0.0)
            return Result<Unit, KernelError>::err(KernelError::invalid_element,
                                                  "arc sweep must lie in (0, 360) degrees");
        return Result<Unit, KernelError>::ok(Unit{});
    }
    const auto& circle = std::get<CircleElement>(element);
    if (!is_finite(circle.center) || !is_finite(circle.radius))
        return Result<Unit, KernelError>::err(KernelError::non_finite_input,
                                              "circle has a non-finite parameter");
    if (circle.radius <= 0.0)
        return Result<Unit, KernelError>::err(KernelError::invalid_element,
                                              "circle radius must be positive");
    return Result<Unit, KernelError>::ok(Unit{});
}

std::vector<Vec2> polygonize_arc(const ArcElement& arc, int segments_per_turn) {
    double sweep = std::fmod(arc.end_angle_deg - arc.start_angle_deg, 360.0);
    if (sweep < 0.0) sweep += 360.0;
    const int n = std::max(1, static_cast<int>(std::ceil(segments_per_turn * sweep / 360.0)));
    std::vector<Vec2> pts;
    pts.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double a = (arc.start_angle_deg + sweep * i / n) * kPi / 180.0;
        pts.push_back({arc.center.x + arc.radius * std::cos(a),
                       arc.center.y + arc.radius * std::sin(a)});
    }
    return pts;
}

bool near(const Vec2& a, const Vec2& b, double tol) { return (a - b).norm() <= tol; }

/// Proper segment intersection (interiors cross); shared endpoints excluded
/// so consecutive loop edges do not self-report.
bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        const double v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
        if (v > 0) return 1;
        if (v < 0) return -1;
        return 0;
    };
    const int o1 = orient(a, b, c);
    const int o2 = orient(a, b, d);
    const int o3 = orient(c, d, a);
    const int o4 = orient(c, d, b);
    return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

bool loop_is_simple(const Loop2& loop) {
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = loop[i];
        const Vec2& b = loop[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;  // adjacent edges
            const Vec2& c = loop[j];
            const Vec2& d = loop[(j + 1) % n];
            if (segments_cross(a, b, c, d)) return false;
        }
    }
    return true;
}

}  // namespace

Loop2 polygonize_circle(const CircleElement& c, int segments) {
    Loop2 loop;
    loop.reserve(segments);
    for (int i = 0; i < segments; ++i) {
        const double a = 2.0 * kPi * i / segments;
        loop.push_back({c.center.x + c.radius * std::cos(a), c.center.y + c.radius * std::sin(a)});
    }
    return loop;
}

LoopResult build_loops(const std::vector<SketchElement>& elements, const GeomConfig& config) {
    if (elements.empty())
        return LoopResult::err(KernelError::invalid_element, "sketch has no elements");

    std::vector<Loop2> loops;
    std::vector<Chain> chains;

    for (const auto& element : elements) {
        auto valid = validate_element(element);
        if (!valid) return LoopResult::err(valid.error(), valid.message());

        if (const auto* circle = std::get_if<CircleElement>(&element)) {
            loops.push_back(polygonize_circle(*circle, config.arc_segments));
        } else if (const auto* line = std::get_if<LineElement>(&element)) {
            chains.push_back(Chain{{line->start, line->end}});
        } else {
            chains.push_back(Chain{polygonize_arc(std::get<ArcElement>(element),
                                                  config.arc_segments)});
        }
    }

    // Chain open elements end-to-end until every one sits in a closed loop.
    std::size_t used = 0;
    while (used < chains.size()) {
        auto seed = std::find_if(chains.begin(), chains.end(),
                                 [](const Chain& c) { return !c.used; });
        seed->used = true;
        ++used;

        std::vector<Vec2> path = seed->points;
        while (!near(path.front(), path.back(), config.loop_close_tol)) {
            bool extended = false;
            for (auto& chain : chains) {
                if (chain.used) continue;
                if (near(chain.points.front(), path.back(), config.loop_close_tol)) {
                    path.insert(path.end(), chain.points.begin() + 1, chain.points.end());
                } else if (near(chain.points.back(), path.back(), config.loop_close_tol)) {
                    path.insert(path.end(), chain.points.rbegin() + 1, chain.points.rend());
                } else {
                    continue;
                }
                chain.used = true;
                ++used;
                extended = true;
                break;
            }
            if (!extended) {
                const double gap = (path.front() - path.back()).norm();
                return LoopResult::err(KernelError::open_loop,
                                       "profile does not close (gap " + std::to_string(gap) +
                                           ")");
            }
        }
        path.pop_back();  // drop duplicated closing vertex
        if (path.size() < 3)
            return LoopResult::err(KernelError::invalid_element,
                                   "closed profile degenerates to fewer than 3 vertices");
        loops.push_back(std::move(path));
    }

    for (const auto& loop : loops) {
        if (!loop_is_simple(loop))
            return LoopResult::err(KernelError::self_intersection,
                                   "profile loop intersects itself");
        if (std::abs(signed_area(loop)) <= 0.0)
            return LoopResult::err(KernelError::invalid_element, "profile loop has zero area");
    }
    return LoopResult::ok(std::move(loops));
}

double signed_area(const Loop2& loop) {
    double acc = 0.0;
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = loop[i];
        const Vec2& b = loop[(i + 1) % n];
        acc += a.x * b.y - b.x * a.y;
    }
    return 0.5 * acc;
}

bool point_in_loops(const std::vector<Loop2>& loops, const Vec2& p) {
    // Even-odd crossing count with the half-open rule on edge endpoints.
    bool inside = false;
    for (const auto& loop : loops) {
        const std::size_t n = loop.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& a = loop[i];
            const Vec2& b = loop[(i + 1) % n];
            if ((a.y > p.y) != (b.y > p.y)) {
                const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if (p.x < x_cross) inside = !inside;
            }
        }
    }
    return inside;
}

Aabb2 loops_bounds(const std::vector<Loop2>& loops) {
    Aabb2 box;
    for (const auto& loop : loops)
        for (const auto& p : loop) box.expand(p);
    return box;
}

}  // namespace cadgym::geom
