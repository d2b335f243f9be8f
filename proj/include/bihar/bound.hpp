#pragma once

#include <cstdint>
#include <queue>
#include <vector>
#include <functional>

#include "interval.hpp"

namespace bihar {

/// Result of a branch-and-bound global sup/inf computation. `value`
/// encloses the true extremum; `converged` is false when the depth or
/// subdivision budget ran out before reaching the requested tolerance.
struct BoundEnclosure {
    Interval value;
    Interval argmax_box;
    std::uint64_t subdivisions = 0;
    int depth = 0;
    bool converged = false;
};

struct BoundControl {
    double rel_tol = 1e-6;
    int max_depth = 60;
    std::uint64_t max_subdivisions = 5'000'000;
};

/// Rigorous enclosure of sup_{x in domain} f(x). f maps an Interval to an
/// enclosure of its range. Boxes are split at the midpoint; the box with
/// the largest upper bound is processed next, ties broken leftmost, so the
/// search is deterministic.
template <class F>
BoundEnclosure certified_sup(F&& f, const Interval& domain, const BoundControl& ctl = {}) {
    struct Box {
        double lo, hi;   // sub-domain
        double ub;       // upper bound of f on it
        int depth;
    };
    struct Cmp {
        bool operator()(const Box& a, const Box& b) const {
            if (a.ub != b.ub) return a.ub < b.ub; // max-heap on ub
            return a.lo > b.lo;                   // leftmost first on ties
        }
    };

    BoundEnclosure out;
    std::priority_queue<Box, std::vector<Box>, Cmp> heap;

    double best_lb = -std::numeric_limits<double>::infinity();
    Interval best_box = domain;

    auto visit = [&](double lo, double hi, int depth) {
        Interval box(lo, hi);
        Interval range = f(box);
        double m = box.mid();
        Interval at_mid = f(Interval(m));
        if (at_mid.lo() > best_lb) {
            best_lb = at_mid.lo();
            best_box = box;
        }
        if (range.hi() > best_lb || range.hi() == best_lb) // keep boxes that may still matter
            heap.push(Box{lo, hi, range.hi(), depth});
        if (depth > out.depth) out.depth = depth;
    };

    visit(domain.lo(), domain.hi(), 0);

    while (!heap.empty()) {
        Box top = heap.top();
        double global_ub = top.ub;
        double tol = ctl.rel_tol * std::max(1.0, std::max(std::fabs(global_ub), std::fabs(best_lb)));
        if (global_ub - best_lb <= tol) {
            out.converged = true;
            out.value = Interval(std::min(best_lb, global_ub), global_ub);
            out.argmax_box = best_box;
            return out;
        }
        if (top.depth >= ctl.max_depth || out.subdivisions >= ctl.max_subdivisions) {
            out.converged = false;
            out.value = Interval(std::min(best_lb, global_ub), global_ub);
            out.argmax_box = best_box;
            return out;
        }
        heap.pop();
        if (top.ub <= best_lb && top.ub != global_ub) continue; // pruned meanwhile
        double m = Interval(top.lo, top.hi).mid();
        if (!(top.lo < m && m < top.hi)) {
            // box no longer splittable at machine resolution
            out.converged = false;
            out.value = Interval(std::min(best_lb, global_ub), global_ub);
            out.argmax_box = best_box;
            return out;
        }
        ++out.subdivisions;
        visit(top.lo, m, top.depth + 1);
        visit(m, top.hi, top.depth + 1);
    }

    // everything pruned: best_lb is attained and also an upper bound witness
    out.converged = true;
    out.value = Interval(best_lb, best_lb);
    out.argmax_box = best_box;
    return out;
}

template <class F>
BoundEnclosure certified_inf(F&& f, const Interval& domain, const BoundControl& ctl = {}) {
    auto negated = [&f](const Interval& x) { return neg(f(x)); };
    BoundEnclosure r = certified_sup(negated, domain, ctl);
    r.value = neg(r.value);
    return r;
}

} // namespace bihar
