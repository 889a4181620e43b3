// Enumeration of ST(d, n) by walking the n-rational points of the absolute
// period leaf: start from one point, tiled at scale m, and move one zero by a
// grid step at a time. Every surface reached this way has absolute periods mZ^2;
// its relative periods determine the torsion order of the point.

#include <deque>
#include <set>
#include <unordered_set>

#include "squaretile/cylinder.hpp"
#include "squaretile/origami.hpp"

namespace squaretile {

namespace {

struct LeafWalk {
    std::vector<Origami> states;  ///< canonical, surfaces in H(1,1)
    std::vector<Origami> merged;  ///< canonical, surfaces in H(2)
};

LeafWalk walk_leaf(int d, int m) {
    CylCoords seed;
    seed.w1 = seed.s1 = seed.w2 = 1;
    seed.s2 = d - 1;
    seed.t1 = seed.t2 = seed.t3 = 0;
    seed.h = Rational(1, m);
    seed.denom = m;
    Origami start = canonical(polygon_origami(seed, m));
    const Lattice2 per = period_lattice(start);

    LeafWalk out;
    std::unordered_set<Origami, OrigamiHash> seen{start}, seen_merged;
    std::deque<Origami> queue{start};
    while (!queue.empty()) {
        Origami cur = std::move(queue.front());
        queue.pop_front();
        out.states.push_back(cur);
        Perm k = commutator(cur);
        std::vector<int> zeros;
        std::vector<char> done(cur.n_squares(), 0);
        for (int s = 0; s < cur.n_squares(); ++s) {
            if (k[s] == s || done[s]) continue;
            done[s] = done[k[s]] = 1;
            zeros.push_back(s);
        }
        for (int z : zeros)
            for (PushDir dir : {PushDir::Right, PushDir::Up, PushDir::Left, PushDir::Down}) {
                PushResult pr = push_zero(cur, z, dir);
                if (!is_transitive(pr.origami)) continue;
                if (pr.merged) {
                    if (branching_profile(pr.origami) != std::vector<int>{3}) continue;
                    Origami c = canonical(pr.origami);
                    if (seen_merged.insert(c).second) out.merged.push_back(c);
                    continue;
                }
                if (period_lattice(pr.origami) != per) continue;
                Origami c = canonical(pr.origami);
                if (seen.insert(c).second) queue.push_back(std::move(c));
            }
    }
    return out;
}

int torsion_at_scale(const Origami& fine, int m) {
    Integer det = relative_period_lattice(fine).det();
    return static_cast<int>(to_i64(Integer(Integer(m) * m / det)));
}

}  // namespace

std::vector<Origami> enumerate(int d, int n, const EnumerateOptions& opt) {
    if (d < 2 || n < 0) throw Error(ErrorKind::InvalidArgument, "enumerate needs d >= 2 and n >= 0");
    const int squares = n == 0 ? d : d * n;
    if (squares > opt.max_squares)
        throw Error(ErrorKind::BudgetExceeded, std::to_string(squares) + " squares exceed the cap of " +
                                                   std::to_string(opt.max_squares));
    std::set<Origami> result;
    if (n >= 2) {
        LeafWalk w = walk_leaf(d, n);
        for (const Origami& fine : w.states)
            if (torsion_at_scale(fine, n) == n) result.insert(fine_to_origami(fine, n));
    } else {
        LeafWalk w = walk_leaf(d, 2);
        if (n == 1) {
            for (const Origami& fine : w.states)
                if (torsion_at_scale(fine, 2) == 1)
                    if (auto o = downscale(fine, 2)) result.insert(canonical(*o));
        } else {
            for (const Origami& fine : w.merged)
                if (auto o = downscale(fine, 2)) result.insert(canonical(*o));
        }
    }
    return {result.begin(), result.end()};
}

}  // namespace squaretile
