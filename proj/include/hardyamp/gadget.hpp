#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "frame.hpp"

namespace hardyamp {

using RealVec = std::vector<double>;

inline double dot(const RealVec& u, const RealVec& v) {
    if (u.size() != v.size()) throw StructuralError("dot: dimension mismatch");
    double s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

/// Scale-free orthogonality test: exact for integer-valued vectors, 1e-9
/// relative tolerance for float completions.
inline bool orthogonal(const RealVec& u, const RealVec& v) {
    const double d = dot(u, v);
    return d * d <= 1e-18 * dot(u, u) * dot(v, v);
}

/// Two vectors span the same ray iff the Cauchy-Schwarz inequality is tight;
/// exact for integer-valued vectors.
inline bool same_ray(const RealVec& u, const RealVec& v) {
    const double uv = dot(u, v), uu = dot(u, u), vv = dot(v, v);
    return std::abs(uu * vv - uv * uv) <= 1e-9 * uu * vv;
}

/**
 * An orthogonality graph with a faithful vector representation and two
 * distinguished non-adjacent vertices. Vectors are kept unnormalized, with
 * integer entries wherever the source construction provides them, so
 * adjacency is decided by exact integer dot products. The distinguished pair
 * may name the same vertex twice; that degenerate form is never a gadget but
 * feeds the four-copy construction.
 */
struct Gadget {
    int dim = 3;
    std::vector<RealVec> vectors;
    std::pair<int, int> distinguished{0, 0};

    void require() const {
        if (dim < 2) throw StructuralError("gadget: dim < 2");
        if (vectors.empty()) throw StructuralError("gadget: no vertices");
        for (const RealVec& v : vectors) {
            if (static_cast<int>(v.size()) != dim)
                throw StructuralError("gadget: vector dimension mismatch");
            if (dot(v, v) <= 0) throw StructuralError("gadget: zero vector");
        }
        for (std::size_t i = 0; i < vectors.size(); ++i)
            for (std::size_t j = i + 1; j < vectors.size(); ++j)
                if (same_ray(vectors[i], vectors[j]))
                    throw StructuralError("gadget: vertices " + std::to_string(i) + " and " +
                                          std::to_string(j) + " share a ray");
        const int n = static_cast<int>(vectors.size());
        if (distinguished.first < 0 || distinguished.first >= n || distinguished.second < 0 ||
            distinguished.second >= n)
            throw StructuralError("gadget: distinguished vertex out of range");
        if (distinguished.first != distinguished.second &&
            orthogonal(vectors[static_cast<std::size_t>(distinguished.first)],
                       vectors[static_cast<std::size_t>(distinguished.second)]))
            throw StructuralError("gadget: distinguished vertices are adjacent");
    }
};

/// The eight-vector dimension-3 gadget with distinguished pair (0, 7).
inline Gadget clifton_gadget() {
    Gadget g;
    g.dim = 3;
    g.vectors = {{-1, 1, 1}, {1, 1, 0},  {0, 1, -1}, {0, 0, 1},
                 {1, 0, 0},  {1, -1, 0}, {0, 1, 1},  {1, 1, -1}};
    g.distinguished = {0, 7};
    return g;
}

namespace detail {

inline std::vector<std::vector<char>> adjacency(const std::vector<RealVec>& vs) {
    const std::size_t n = vs.size();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            adj[i][j] = adj[j][i] = orthogonal(vs[i], vs[j]) ? 1 : 0;
    return adj;
}

/// Bron-Kerbosch with pivoting. Cliques are returned with members ascending
/// and the list sorted lexicographically, so enumeration is reproducible.
inline std::vector<std::vector<int>> maximal_cliques(const std::vector<std::vector<char>>& adj) {
    const int n = static_cast<int>(adj.size());
    auto edge = [&](int i, int j) {
        return adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0;
    };
    std::vector<std::vector<int>> out;
    std::vector<int> R;
    auto expand = [&](auto&& self, std::vector<int> P, std::vector<int> X) -> void {
        if (P.empty() && X.empty()) {
            out.push_back(R);
            return;
        }
        int pivot = -1, best = -1;
        for (const auto* side : {&P, &X})
            for (int u : *side) {
                int c = 0;
                for (int w : P) c += edge(u, w) ? 1 : 0;
                if (c > best) {
                    best = c;
                    pivot = u;
                }
            }
        std::vector<int> cand;
        for (int v : P)
            if (!edge(pivot, v)) cand.push_back(v);
        for (int v : cand) {
            R.push_back(v);
            std::vector<int> P2, X2;
            for (int w : P)
                if (edge(v, w)) P2.push_back(w);
            for (int w : X)
                if (edge(v, w)) X2.push_back(w);
            self(self, std::move(P2), std::move(X2));
            R.pop_back();
            P.erase(std::find(P.begin(), P.end(), v));
            X.push_back(v);
        }
    };
    std::vector<int> P(static_cast<std::size_t>(n));
    std::iota(P.begin(), P.end(), 0);
    expand(expand, std::move(P), {});
    for (auto& c : out) std::sort(c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
}

/// Reduce an integer-valued vector to its canonical ray representative:
/// entries divided by their gcd, first nonzero entry positive. Float vectors
/// only get the sign fix.
inline void canonicalize_ray(RealVec& v) {
    bool integral = true;
    long long g = 0;
    for (double e : v) {
        const double r = std::round(e);
        if (std::abs(e - r) > 1e-9 || std::abs(r) > 1e9) {
            integral = false;
            break;
        }
        g = std::gcd(g, static_cast<long long>(std::llround(std::abs(r))));
    }
    if (integral && g > 1)
        for (double& e : v) e = std::round(e) / static_cast<double>(g);
    for (double e : v) {
        if (std::abs(e) <= 1e-12) continue;
        if (e < 0)
            for (double& f : v) f = -f;
        break;
    }
}

inline RealVec cross3(const RealVec& u, const RealVec& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

/// One vector orthogonal to every member of a partial basis: exact cross
/// product for two vectors in dimension 3, re-orthogonalized Gram-Schmidt
/// against the normalized members otherwise.
inline RealVec completion_vector(const std::vector<RealVec>& vs, const std::vector<int>& clique,
                                 int dim) {
    if (dim == 3 && clique.size() == 2) {
        RealVec w = cross3(vs[static_cast<std::size_t>(clique[0])], vs[static_cast<std::size_t>(clique[1])]);
        if (dot(w, w) <= 0) throw DomainError("complete_bases: degenerate completion");
        canonicalize_ray(w);
        return w;
    }
    std::vector<RealVec> basis;
    for (int id : clique) {
        RealVec m = vs[static_cast<std::size_t>(id)];
        const double nrm = std::sqrt(dot(m, m));
        for (double& e : m) e /= nrm;
        basis.push_back(std::move(m));
    }
    for (int j = 0; j < dim; ++j) {
        RealVec w(static_cast<std::size_t>(dim), 0.0);
        w[static_cast<std::size_t>(j)] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const RealVec& m : basis) {
                const double c = dot(w, m);
                for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * m[i];
            }
        if (dot(w, w) > 1e-10) {
            const double nrm = std::sqrt(dot(w, w));
            for (double& e : w) e /= nrm;
            canonicalize_ray(w);
            return w;
        }
    }
    throw DomainError("complete_bases: degenerate completion");
}

}  // namespace detail

struct GadgetVerdict {
    bool isGadget = false;      ///< no valid coloring sets both distinguished vertices to 1
    bool v1Attainable = false;  ///< some valid coloring sets the first distinguished vertex to 1
    bool v2Attainable = false;
    long colorings = 0;         ///< total valid colorings (deterministic enumeration)
};

/**
 * Exhaustive check of the gadget property under the standard coloring rules:
 * adjacent vertices are never both 1, and every maximal clique of size dim
 * (a complete measurement basis) contains exactly one 1.
 */
inline GadgetVerdict verify_gadget(const Gadget& g) {
    g.require();
    const int n = static_cast<int>(g.vectors.size());
    if (n > 40) throw CapacityError("verify_gadget: more than 40 vertices");
    const auto adj = detail::adjacency(g.vectors);
    std::vector<std::vector<int>> bases;
    for (const auto& c : detail::maximal_cliques(adj))
        if (static_cast<int>(c.size()) == g.dim) bases.push_back(c);

    std::vector<std::vector<int>> memberOf(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> closedBy(static_cast<std::size_t>(n));
    for (std::size_t ci = 0; ci < bases.size(); ++ci) {
        for (int v : bases[ci]) memberOf[static_cast<std::size_t>(v)].push_back(static_cast<int>(ci));
        closedBy[static_cast<std::size_t>(bases[ci].back())].push_back(static_cast<int>(ci));
    }
    std::vector<std::vector<int>> earlierNbrs(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < v; ++w)
            if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)])
                earlierNbrs[static_cast<std::size_t>(v)].push_back(w);

    GadgetVerdict verdict;
    verdict.isGadget = true;
    std::vector<char> f(static_cast<std::size_t>(n), 0);
    std::vector<int> ones(bases.size(), 0);
    // the edge rule caps every basis clique at one 1, so the exactly-one rule
    // reduces to "nonempty once the clique's last vertex is assigned"
    auto closesOk = [&](int v) {
        for (int ci : closedBy[static_cast<std::size_t>(v)])
            if (ones[static_cast<std::size_t>(ci)] == 0) return false;
        return true;
    };
    auto dfs = [&](auto&& self, int v) -> void {
        if (v == n) {
            ++verdict.colorings;
            const bool a = f[static_cast<std::size_t>(g.distinguished.first)] != 0;
            const bool b = f[static_cast<std::size_t>(g.distinguished.second)] != 0;
            verdict.v1Attainable = verdict.v1Attainable || a;
            verdict.v2Attainable = verdict.v2Attainable || b;
            if (a && b) verdict.isGadget = false;
            return;
        }
        if (closesOk(v)) self(self, v + 1);  // f[v] stays 0
        bool clash = false;
        for (int w : earlierNbrs[static_cast<std::size_t>(v)])
            if (f[static_cast<std::size_t>(w)]) {
                clash = true;
                break;
            }
        if (!clash) {
            f[static_cast<std::size_t>(v)] = 1;
            for (int ci : memberOf[static_cast<std::size_t>(v)]) ++ones[static_cast<std::size_t>(ci)];
            if (closesOk(v)) self(self, v + 1);
            for (int ci : memberOf[static_cast<std::size_t>(v)]) --ones[static_cast<std::size_t>(ci)];
            f[static_cast<std::size_t>(v)] = 0;
        }
    };
    dfs(dfs, 0);
    return verdict;
}

/**
 * A compiled two-party game: both parties' inputs are the complete bases
 * (size-dim maximal cliques) of the vector set, outcomes are positions within
 * the chosen basis. Zero events are exactly the orthogonal cross-basis vector
 * pairs; the distinguished (non-orthogonal) pairs are the Hardy events.
 */
struct GadgetGame {
    int dim = 3;
    std::vector<RealVec> vectors;
    std::vector<std::vector<int>> cliques;
    std::pair<int, int> distinguished{0, 0};
    std::vector<Event> hardyEvents;

    BellScenario scenario() const {
        const int k = static_cast<int>(cliques.size());
        return BellScenario{k, k, dim, dim};
    }

    std::vector<Event> zero_events() const {
        std::vector<Event> zs;
        const int k = static_cast<int>(cliques.size());
        for (int x = 0; x < k; ++x)
            for (int y = 0; y < k; ++y)
                for (int a = 0; a < dim; ++a)
                    for (int b = 0; b < dim; ++b) {
                        const RealVec& u = vectors[static_cast<std::size_t>(cliques[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)])];
                        const RealVec& v = vectors[static_cast<std::size_t>(cliques[static_cast<std::size_t>(y)][static_cast<std::size_t>(b)])];
                        if (orthogonal(u, v)) zs.push_back(Event{a, b, x, y});
                    }
        return zs;
    }

    /// Hardy frame of a single-distinguished-event game.
    HardyFrame frame() const {
        if (hardyEvents.size() != 1)
            throw StructuralError("GadgetGame: games with several Hardy events have no single frame");
        HardyFrame f;
        f.scenario = scenario();
        f.zeroSet = zero_events();
        f.hardyEvent = hardyEvents.front();
        f.require();
        return f;
    }
};

/// View a compiled game's vertex set as a Gadget again (for coloring checks
/// on the completed graph).
inline Gadget as_gadget(const GadgetGame& game) {
    Gadget g;
    g.dim = game.dim;
    g.vectors = game.vectors;
    g.distinguished = game.distinguished;
    return g;
}

/**
 * Complete every partial measurement basis: any maximal clique smaller than
 * dim gains a new orthogonal vector (exact cross product in dimension 3,
 * Gram-Schmidt in dimension 4) until all maximal cliques have size dim. The
 * cliques become the game inputs; the Hardy event sits at the first basis
 * containing the first distinguished vertex and the last basis containing
 * the second.
 */
inline GadgetGame complete_bases(const Gadget& g) {
    g.require();
    if (g.dim != 3 && g.dim != 4) throw DomainError("complete_bases: dim must be 3 or 4");
    std::vector<RealVec> vs = g.vectors;
    for (int guard = 0;; ++guard) {
        if (guard > 200) throw DomainError("complete_bases: completion did not converge");
        if (vs.size() > 64) throw CapacityError("complete_bases: vertex budget exceeded");
        const auto adj = detail::adjacency(vs);
        const auto cliques = detail::maximal_cliques(adj);
        const std::vector<int>* incomplete = nullptr;
        for (const auto& c : cliques)
            if (static_cast<int>(c.size()) < g.dim) {
                incomplete = &c;
                break;
            }
        if (!incomplete) {
            GadgetGame game;
            game.dim = g.dim;
            game.vectors = vs;
            game.cliques = cliques;
            game.distinguished = g.distinguished;
            int xs = -1, as = -1, ys = -1, bs = -1;
            for (std::size_t ci = 0; ci < cliques.size() && xs < 0; ++ci) {
                auto it = std::find(cliques[ci].begin(), cliques[ci].end(), g.distinguished.first);
                if (it != cliques[ci].end()) {
                    xs = static_cast<int>(ci);
                    as = static_cast<int>(it - cliques[ci].begin());
                }
            }
            for (std::size_t ci = cliques.size(); ci-- > 0 && ys < 0;) {
                auto it = std::find(cliques[ci].begin(), cliques[ci].end(), g.distinguished.second);
                if (it != cliques[ci].end()) {
                    ys = static_cast<int>(ci);
                    bs = static_cast<int>(it - cliques[ci].begin());
                }
            }
            if (xs < 0 || ys < 0)
                throw StructuralError("complete_bases: distinguished vertex in no basis");
            game.hardyEvents = {Event{as, bs, xs, ys}};
            return game;
        }
        RealVec w = detail::completion_vector(vs, *incomplete, g.dim);
        for (const RealVec& v : vs)
            if (same_ray(v, w))
                throw DomainError("complete_bases: degenerate completion (existing ray)");
        vs.push_back(std::move(w));
    }
}

/// The four pairwise-orthogonal equal-norm images of a 4-vector under the
/// fixed quaternion-multiplication matrices.
inline std::array<RealVec, 4> quaternion_copies(const RealVec& v) {
    if (v.size() != 4) throw StructuralError("quaternion_copies: need a 4-vector");
    if (dot(v, v) <= 0) throw DomainError("quaternion_copies: zero vector");
    const double a = v[0], b = v[1], c = v[2], d = v[3];
    return {RealVec{a, b, c, d}, RealVec{b, -a, d, -c}, RealVec{c, -d, -a, b},
            RealVec{d, c, -b, -a}};
}

/**
 * Four-copy construction over a dimension-3 gadget: embed every vector as
 * (x,y,z,0), add (0,0,0,1), take the four quaternion copies of everything,
 * identify equal rays, and recompute the orthogonality structure in R^4.
 * Inputs are all maximal 4-cliques; the Hardy events pair copy i of the
 * first distinguished vertex with copy i of the second, so a single
 * distinguished input pair carries four events whose quantum probabilities
 * sum to (|<v1|v2>|^2 / (|v1|^2 |v2|^2)) under the shared maximally
 * entangled state (1 when the distinguished vectors coincide).
 */
inline GadgetGame four_copy_game(const Gadget& g) {
    g.require();
    if (g.dim != 3) throw DomainError("four_copy_game: base gadget must have dim 3");
    std::vector<RealVec> base;
    base.reserve(g.vectors.size() + 1);
    for (const RealVec& u : g.vectors) base.push_back({u[0], u[1], u[2], 0.0});
    base.push_back({0, 0, 0, 1});

    std::vector<RealVec> vs;
    std::vector<std::array<int, 4>> copyId(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        const auto copies = quaternion_copies(base[i]);
        for (int k = 0; k < 4; ++k) {
            int id = -1;
            for (std::size_t j = 0; j < vs.size(); ++j)
                if (same_ray(vs[j], copies[static_cast<std::size_t>(k)])) {
                    id = static_cast<int>(j);
                    break;
                }
            if (id < 0) {
                id = static_cast<int>(vs.size());
                vs.push_back(copies[static_cast<std::size_t>(k)]);
                if (vs.size() > 64) throw CapacityError("four_copy_game: vertex budget exceeded");
            }
            copyId[i][static_cast<std::size_t>(k)] = id;
        }
    }

    GadgetGame game;
    game.dim = 4;
    game.vectors = vs;
    for (const auto& c : detail::maximal_cliques(detail::adjacency(vs)))
        if (c.size() == 4) game.cliques.push_back(c);

    auto cliqueIndex = [&](std::array<int, 4> family) {
        std::vector<int> key(family.begin(), family.end());
        std::sort(key.begin(), key.end());
        for (std::size_t ci = 0; ci < game.cliques.size(); ++ci)
            if (game.cliques[ci] == key) return static_cast<int>(ci);
        throw StructuralError("four_copy_game: distinguished copy family is not a game input");
    };
    const auto f1 = copyId[static_cast<std::size_t>(g.distinguished.first)];
    const auto f2 = copyId[static_cast<std::size_t>(g.distinguished.second)];
    const int xs = cliqueIndex(f1), ys = cliqueIndex(f2);
    game.distinguished = {f1[0], f2[0]};
    for (int k = 0; k < 4; ++k) {
        const auto& cx = game.cliques[static_cast<std::size_t>(xs)];
        const auto& cy = game.cliques[static_cast<std::size_t>(ys)];
        const int a = static_cast<int>(std::find(cx.begin(), cx.end(), f1[static_cast<std::size_t>(k)]) - cx.begin());
        const int b = static_cast<int>(std::find(cy.begin(), cy.end(), f2[static_cast<std::size_t>(k)]) - cy.begin());
        game.hardyEvents.push_back(Event{a, b, xs, ys});
    }
    return game;
}

}  // namespace hardyamp
