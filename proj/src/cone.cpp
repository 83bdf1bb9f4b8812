#include "spunfib/cone.hpp"

#include "spunfib/homology.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <stdexcept>

namespace spunfib {

QuadBlocks standard_quad_blocks(int n_tets) {
    QuadBlocks b(n_tets);
    for (int t = 0; t < n_tets; ++t) b[t] = {7 * t + 4, 7 * t + 5, 7 * t + 6};
    return b;
}

QuadBlocks quad_quad_blocks(int n_tets) {
    QuadBlocks b(n_tets);
    for (int t = 0; t < n_tets; ++t) b[t] = {3 * t, 3 * t + 1, 3 * t + 2};
    return b;
}

namespace {

std::vector<int> support_of(const std::vector<Int>& v) {
    std::vector<int> s;
    for (int j = 0; j < static_cast<int>(v.size()); ++j)
        if (v[j] != 0) s.push_back(j);
    return s;
}

void normalize_content(std::vector<Int>& v) {
    Int g = 0;
    for (const Int& e : v) g = gcd(g, e);
    if (g > 1)
        for (Int& e : v) e /= g;
}

bool support_admissible(const std::vector<Int>& v, const QuadBlocks& blocks) {
    for (const auto& b : blocks) {
        int nz = 0;
        for (int j : b)
            if (v[j] != 0) ++nz;
        if (nz > 1) return false;
    }
    return true;
}

void sort_rays(std::vector<RayBasis>& rays) {
    std::sort(rays.begin(), rays.end(), [](const RayBasis& a, const RayBasis& b) {
        if (a.support != b.support) return a.support < b.support;
        return a.vec < b.vec;
    });
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
}

} // namespace

namespace {

// support bitmask, 64 columns per word
using Mask = std::vector<uint64_t>;

Mask mask_of(const std::vector<int>& support, int words) {
    Mask m(words, 0);
    for (int j : support) m[j >> 6] |= uint64_t(1) << (j & 63);
    return m;
}

bool mask_subset(const Mask& a, const Mask& b) {
    for (size_t w = 0; w < a.size(); ++w)
        if (a[w] & ~b[w]) return false;
    return true;
}

// Quad-block signature: 3 bits per block, 21 blocks per word.  Combining two
// non-negative rays never cancels a coordinate, so a child's support is
// exactly the union of its parents' supports; a pair whose combined signature
// holds two quad types of one block can be skipped outright.
constexpr uint64_t kBlockLow = 0x1249249249249249ULL; // bits 0,3,...,60

Mask block_signature(const std::vector<int>& support, const QuadBlocks& blocks,
                     const std::vector<int>& block_of, const std::vector<int>& slot_of) {
    Mask sig((blocks.size() + 20) / 21, 0);
    for (int j : support) {
        if (block_of[j] < 0) continue;
        int b = block_of[j];
        sig[b / 21] |= uint64_t(1) << (3 * (b % 21) + slot_of[j]);
    }
    return sig;
}

bool signature_union_admissible(const Mask& a, const Mask& b) {
    for (size_t w = 0; w < a.size(); ++w) {
        uint64_t x = a[w] | b[w];
        uint64_t x0 = x & kBlockLow, x1 = (x >> 1) & kBlockLow, x2 = (x >> 2) & kBlockLow;
        if ((x0 & x1) | (x0 & x2) | (x1 & x2)) return false;
    }
    return true;
}

} // namespace

VertexSolutionSet enumerate_vertex_solutions(const MatchingSystem& system,
                                             const QuadBlocks& blocks) {
    for (const auto& b : blocks)
        for (int j : b)
            if (j < 0 || j >= system.cols)
                throw std::runtime_error("enumerate: quad block out of range");

    int cols = system.cols;
    int words = (cols + 63) / 64;
    std::vector<int> block_of(cols, -1), slot_of(cols, 0);
    for (size_t b = 0; b < blocks.size(); ++b)
        for (int s = 0; s < 3; ++s) {
            block_of[blocks[b][s]] = static_cast<int>(b);
            slot_of[blocks[b][s]] = s;
        }
    std::vector<RayBasis> rays;
    std::vector<Mask> masks, sigs;
    for (int j = 0; j < cols; ++j) {
        RayBasis r;
        r.vec.assign(cols, 0);
        r.vec[j] = 1;
        r.support = {j};
        masks.push_back(mask_of(r.support, words));
        sigs.push_back(block_signature(r.support, blocks, block_of, slot_of));
        rays.push_back(std::move(r));
    }

    auto dot = [&](const std::vector<Int>& row, const RayBasis& r) {
        Int s = 0;
        for (int j : r.support) s += row[j] * r.vec[j];
        return s;
    };

    // Insert rows one at a time.  The result is order-independent, but the
    // intermediate ray counts are not: growing the set of touched columns
    // incrementally keeps them low, so take rows by descending first nonzero
    // column (ties in the given order).
    std::vector<size_t> order(system.rows.size());
    for (size_t r = 0; r < order.size(); ++r) order[r] = r;
    auto first_col = [&](size_t r) {
        for (int j = 0; j < cols; ++j)
            if (system.rows[r][j] != 0) return j;
        return cols;
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return first_col(a) > first_col(b); });
    for (size_t step = 0; step < order.size(); ++step) {
        const std::vector<Int>& row = system.rows[order[step]];
        std::vector<Int> rv(rays.size());
        for (size_t i = 0; i < rays.size(); ++i) rv[i] = dot(row, rays[i]);
        if (std::getenv("SPUNFIB_DD_TRACE"))
            std::fprintf(stderr, "dd step %zu rays %zu\n", step, rays.size());

        std::vector<RayBasis> next;
        std::vector<Mask> next_masks, next_sigs;
        std::vector<size_t> pos, neg;
        for (size_t i = 0; i < rays.size(); ++i) {
            if (rv[i] == 0) {
                next.push_back(rays[i]);
                next_masks.push_back(masks[i]);
                next_sigs.push_back(sigs[i]);
            } else {
                (rv[i] > 0 ? pos : neg).push_back(i);
            }
        }
        auto adjacent = [&](size_t u, size_t v) {
            Mask un(words);
            for (int w = 0; w < words; ++w) un[w] = masks[u][w] | masks[v][w];
            for (size_t w = 0; w < rays.size(); ++w) {
                if (w == u || w == v) continue;
                if (mask_subset(masks[w], un)) return false;
            }
            return true;
        };
        for (size_t u : pos)
            for (size_t v : neg) {
                if (!signature_union_admissible(sigs[u], sigs[v])) continue;
                if (!adjacent(u, v)) continue;
                RayBasis r;
                r.vec.assign(cols, 0);
                for (int j : rays[u].support) r.vec[j] -= rv[v] * rays[u].vec[j];
                for (int j : rays[v].support) r.vec[j] += rv[u] * rays[v].vec[j];
                normalize_content(r.vec);
                if (!support_admissible(r.vec, blocks)) continue;
                r.support = support_of(r.vec);
                next_masks.push_back(mask_of(r.support, words));
                next_sigs.push_back(block_signature(r.support, blocks, block_of, slot_of));
                next.push_back(std::move(r));
            }
        rays = std::move(next);
        masks = std::move(next_masks);
        sigs = std::move(next_sigs);
    }

    VertexSolutionSet out;
    for (RayBasis& r : rays)
        if (support_admissible(r.vec, blocks)) out.rays.push_back(std::move(r));
    sort_rays(out.rays);
    return out;
}

VertexSolutionSet brute_force_rays(const MatchingSystem& system, const QuadBlocks& blocks,
                                   long bound) {
    int cols = system.cols;
    if (cols > 24) throw std::runtime_error("brute_force_rays: too many columns");

    // block membership and the column after which each row is fully assigned
    std::vector<int> block_of(cols, -1);
    for (size_t b = 0; b < blocks.size(); ++b)
        for (int j : blocks[b]) block_of[j] = static_cast<int>(b);
    int n_rows = static_cast<int>(system.rows.size());
    // reachable range of each row over the still-unassigned columns >= j
    std::vector<std::vector<Int>> max_rem(n_rows, std::vector<Int>(cols + 1, 0));
    std::vector<std::vector<Int>> min_rem(n_rows, std::vector<Int>(cols + 1, 0));
    for (int r = 0; r < n_rows; ++r)
        for (int j = cols - 1; j >= 0; --j) {
            const Int& c = system.rows[r][j];
            max_rem[r][j] = max_rem[r][j + 1] + (c > 0 ? Int(c * bound) : Int(0));
            min_rem[r][j] = min_rem[r][j + 1] + (c < 0 ? Int(c * bound) : Int(0));
        }

    std::vector<Int> x(cols, 0), partial(n_rows, 0);
    std::vector<int> block_used(blocks.size(), -1); // column of the nonzero quad
    std::vector<RayBasis> sols;

    auto record = [&]() {
        RayBasis r;
        r.vec = x;
        normalize_content(r.vec);
        r.support = support_of(r.vec);
        if (!r.support.empty()) sols.push_back(std::move(r));
    };

    std::function<void(int)> rec = [&](int j) {
        if (j == cols) {
            record();
            return;
        }
        int blk = block_of[j];
        for (long v = 0; v <= bound; ++v) {
            if (v > 0 && blk >= 0) {
                if (block_used[blk] >= 0 && block_used[blk] != j) break;
                block_used[blk] = j;
            }
            x[j] = v;
            if (v > 0)
                for (int r = 0; r < n_rows; ++r) partial[r] += system.rows[r][j];
            bool ok = true;
            for (int r = 0; r < n_rows && ok; ++r)
                if (partial[r] + max_rem[r][j + 1] < 0 || partial[r] + min_rem[r][j + 1] > 0)
                    ok = false;
            if (ok) rec(j + 1);
        }
        for (int r = 0; r < n_rows; ++r) partial[r] -= system.rows[r][j] * x[j];
        if (blk >= 0 && block_used[blk] == j) block_used[blk] = -1;
        x[j] = 0;
    };
    rec(0);

    sort_rays(sols);
    // keep the support-minimal ones
    VertexSolutionSet out;
    for (size_t i = 0; i < sols.size(); ++i) {
        bool minimal = true;
        for (size_t k = 0; k < sols.size() && minimal; ++k) {
            if (k == i || sols[k].support.size() >= sols[i].support.size()) continue;
            minimal = !std::includes(sols[i].support.begin(), sols[i].support.end(),
                                     sols[k].support.begin(), sols[k].support.end());
        }
        if (minimal) out.rays.push_back(sols[i]);
    }
    sort_rays(out.rays);
    return out;
}

StandardVector canonical_extension(const Triangulation& tri, const QuadVector& q) {
    int n = tri.size();
    if (q.n_tets() != n) throw std::runtime_error("canonical_extension: size mismatch");
    for (const Int& e : q.v)
        if (e < 0) throw std::runtime_error("canonical_extension: negative quad count");

    Skeleton sk(tri);
    // Triangle counts are pinned by the arc matching across each interior
    // face: tri(t,v) + quad across (f,v) = tri(t2,w) + quad across (f2,w).
    // Solve the difference system by propagation within each vertex class,
    // then shift each class so its minimum is zero.
    std::vector<std::vector<Int>> pot(n, std::vector<Int>(4));
    std::vector<std::vector<char>> seen(n, std::vector<char>(4, 0));
    std::vector<std::pair<int, int>> stack;
    for (int t0 = 0; t0 < n; ++t0)
        for (int v0 = 0; v0 < 4; ++v0) {
            if (seen[t0][v0]) continue;
            seen[t0][v0] = 1;
            pot[t0][v0] = 0;
            stack.push_back({t0, v0});
            while (!stack.empty()) {
                auto [t, v] = stack.back();
                stack.pop_back();
                for (int f = 0; f < 4; ++f) {
                    if (f == v || !tri.is_glued(t, f)) continue;
                    const Gluing& g = *tri.gluing(t, f);
                    int t2 = g.tet, w = g.perm[v], f2 = g.perm[f];
                    Int p = pot[t][v] + q.quad(t, quad_type(f, v)) -
                            q.quad(t2, quad_type(f2, w));
                    if (!seen[t2][w]) {
                        seen[t2][w] = 1;
                        pot[t2][w] = p;
                        stack.push_back({t2, w});
                    } else if (pot[t2][w] != p) {
                        throw std::runtime_error(
                            "canonical_extension: quad vector has no triangle completion");
                    }
                }
            }
        }

    std::vector<Int> shift(sk.n_vertex_classes());
    std::vector<char> shift_set(sk.n_vertex_classes(), 0);
    for (int t = 0; t < n; ++t)
        for (int v = 0; v < 4; ++v) {
            int c = sk.vertex_class(t, v);
            if (!shift_set[c] || pot[t][v] < shift[c]) {
                shift[c] = pot[t][v];
                shift_set[c] = 1;
            }
        }

    StandardVector x(n);
    for (int t = 0; t < n; ++t) {
        for (int v = 0; v < 4; ++v) x.tri(t, v) = pot[t][v] - shift[sk.vertex_class(t, v)];
        for (int k = 0; k < 3; ++k) x.quad(t, k) = q.quad(t, k);
    }
    return x;
}


std::vector<std::vector<Int>> candidate_sums(const VertexSolutionSet& vertices,
                                             const QuadBlocks& blocks, int max_terms) {
    if (max_terms < 1) throw std::runtime_error("candidate_sums: max_terms must be positive");
    std::vector<std::vector<Int>> ordered;
    if (vertices.rays.empty()) return ordered;
    int cols = static_cast<int>(vertices.rays.front().vec.size());
    std::vector<int> pick;
    // by term count, then lexicographically by the chosen index tuple
    std::function<void(int, int, int)> gen = [&](int from, int terms, int target) {
        if (terms == target) {
            std::vector<Int> sum(cols, 0);
            for (int i : pick)
                for (int j = 0; j < cols; ++j) sum[j] += vertices.rays[i].vec[j];
            if (support_admissible(sum, blocks)) ordered.push_back(std::move(sum));
            return;
        }
        for (int i = from; i < static_cast<int>(vertices.rays.size()); ++i) {
            pick.push_back(i);
            gen(i, terms + 1, target);
            pick.pop_back();
        }
    };
    for (int target = 1; target <= max_terms; ++target) gen(0, 0, target);
    return ordered;
}

} // namespace spunfib
