#include "ipaths/matching.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "ipaths/errors.hpp"

namespace ipaths {

namespace {

// Primal-dual blossom solver. Vertices are 0..n-1, blossoms n..2n-1.
// Endpoint p of edge k is 2k (first vertex) or 2k+1 (second vertex); p ^ 1
// is the other end. Labels: 0 free, 1 S (outer), 2 T (inner); bit 4 marks
// blossoms visited while scanning for a common base.
class BlossomMatcher {
public:
    using Weight = std::int64_t;

    BlossomMatcher(int n, std::vector<MatchEdge<Weight>> edges) : n_(n), edges_(std::move(edges)) {}

    std::vector<int> solve();

private:
    Weight slack(int k) const {
        const auto& e = edges_[k];
        return dual_[e.u] + dual_[e.v] - 2 * e.weight;
    }

    void leaves(int b, std::vector<int>& out) const {
        if (b < n_) {
            out.push_back(b);
            return;
        }
        for (int c : childs_[b])
            leaves(c, out);
    }
    std::vector<int> leaves(int b) const {
        std::vector<int> out;
        leaves(b, out);
        return out;
    }

    static int wrap(int j, int len) { return ((j % len) + len) % len; }

    void assign_label(int w, int t, int p);
    int scan_blossom(int v, int w);
    void add_blossom(int base, int k);
    void expand_blossom(int b, bool endstage);
    void augment_blossom(int b, int v);
    void augment_matching(int k);

    int n_;
    std::vector<MatchEdge<Weight>> edges_;
    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_;
    std::vector<int> label_, labelend_, inblossom_, parent_, base_, bestedge_;
    std::vector<std::vector<int>> childs_, endps_, bestedges_;
    std::vector<char> has_bestedges_;
    std::vector<int> unused_;
    std::vector<Weight> dual_;
    std::vector<char> allowedge_;
    std::vector<int> queue_;
};

void BlossomMatcher::assign_label(int w, int t, int p) {
    const int b = inblossom_[w];
    assert(label_[w] == 0 && label_[b] == 0);
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
        leaves(b, queue_);
    } else if (t == 2) {
        const int base = base_[b];
        assert(mate_[base] >= 0);
        assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
}

int BlossomMatcher::scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
        int b = inblossom_[v];
        if (label_[b] & 4) {
            base = base_[b];
            break;
        }
        assert(label_[b] == 1);
        path.push_back(b);
        label_[b] = 5;
        if (labelend_[b] == -1) {
            v = -1;
        } else {
            v = endpoint_[labelend_[b]];
            b = inblossom_[v];
            assert(label_[b] == 2);
            v = endpoint_[labelend_[b]];
        }
        if (w != -1)
            std::swap(v, w);
    }
    for (int b : path)
        label_[b] = 1;
    return base;
}

void BlossomMatcher::add_blossom(int base, int k) {
    int v = edges_[k].u;
    int w = edges_[k].v;
    const int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    const int b = unused_.back();
    unused_.pop_back();
    base_[b] = base;
    parent_[b] = -1;
    parent_[bb] = b;
    auto& path = childs_[b];
    auto& endps = endps_[b];
    path.clear();
    endps.clear();
    while (bv != bb) {
        parent_[bv] = b;
        path.push_back(bv);
        endps.push_back(labelend_[bv]);
        v = endpoint_[labelend_[bv]];
        bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
        parent_[bw] = b;
        path.push_back(bw);
        endps.push_back(labelend_[bw] ^ 1);
        w = endpoint_[labelend_[bw]];
        bw = inblossom_[w];
    }
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dual_[b] = 0;
    for (int leaf : leaves(b)) {
        if (label_[inblossom_[leaf]] == 2)
            queue_.push_back(leaf);
        inblossom_[leaf] = b;
    }

    std::vector<int> bestedgeto(2 * n_, -1);
    for (int child : path) {
        std::vector<std::vector<int>> lists;
        if (!has_bestedges_[child]) {
            for (int leaf : leaves(child)) {
                std::vector<int> ks;
                for (int p : neighbend_[leaf])
                    ks.push_back(p / 2);
                lists.push_back(std::move(ks));
            }
        } else {
            lists.push_back(bestedges_[child]);
        }
        for (const auto& list : lists)
            for (int kk : list) {
                int i = edges_[kk].u;
                int j = edges_[kk].v;
                if (inblossom_[j] == b)
                    std::swap(i, j);
                const int bj = inblossom_[j];
                if (bj != b && label_[bj] == 1 &&
                    (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj])))
                    bestedgeto[bj] = kk;
            }
        bestedges_[child].clear();
        has_bestedges_[child] = 0;
        bestedge_[child] = -1;
    }
    auto& mine = bestedges_[b];
    mine.clear();
    for (int kk : bestedgeto)
        if (kk != -1)
            mine.push_back(kk);
    has_bestedges_[b] = 1;
    bestedge_[b] = -1;
    for (int kk : mine)
        if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b]))
            bestedge_[b] = kk;
}

void BlossomMatcher::expand_blossom(int b, bool endstage) {
    for (int s : childs_[b]) {
        parent_[s] = -1;
        if (s < n_) {
            inblossom_[s] = s;
        } else if (endstage && dual_[s] == 0) {
            expand_blossom(s, endstage);
        } else {
            for (int leaf : leaves(s))
                inblossom_[leaf] = s;
        }
    }

    if (!endstage && label_[b] == 2) {
        // Relabel the sub-blossoms on the even-length path from the entry
        // child to the base; the rest become free again.
        const auto& ch = childs_[b];
        const auto& ep = endps_[b];
        const int len = static_cast<int>(ch.size());
        const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
        int j = static_cast<int>(std::find(ch.begin(), ch.end(), entrychild) - ch.begin());
        int jstep, endptrick;
        if (j & 1) {
            j -= len;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        int p = labelend_[b];
        while (j != 0) {
            label_[endpoint_[p ^ 1]] = 0;
            label_[endpoint_[ep[wrap(j - endptrick, len)] ^ endptrick ^ 1]] = 0;
            assign_label(endpoint_[p ^ 1], 2, p);
            allowedge_[ep[wrap(j - endptrick, len)] / 2] = 1;
            j += jstep;
            p = ep[wrap(j - endptrick, len)] ^ endptrick;
            allowedge_[p / 2] = 1;
            j += jstep;
        }
        int bv = ch[wrap(j, len)];
        label_[endpoint_[p ^ 1]] = label_[bv] = 2;
        labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
        bestedge_[bv] = -1;
        j += jstep;
        while (ch[wrap(j, len)] != entrychild) {
            bv = ch[wrap(j, len)];
            if (label_[bv] == 1) {
                j += jstep;
                continue;
            }
            int found = -1;
            for (int leaf : leaves(bv))
                if (label_[leaf] != 0) {
                    found = leaf;
                    break;
                }
            if (found != -1) {
                assert(label_[found] == 2 && inblossom_[found] == bv);
                label_[found] = 0;
                label_[endpoint_[mate_[base_[bv]]]] = 0;
                assign_label(found, 2, labelend_[found]);
            }
            j += jstep;
        }
    }

    label_[b] = labelend_[b] = -1;
    childs_[b].clear();
    endps_[b].clear();
    base_[b] = -1;
    bestedges_[b].clear();
    has_bestedges_[b] = 0;
    bestedge_[b] = -1;
    unused_.push_back(b);
}

void BlossomMatcher::augment_blossom(int b, int v) {
    int t = v;
    while (parent_[t] != b)
        t = parent_[t];
    if (t >= n_)
        augment_blossom(t, v);
    auto& ch = childs_[b];
    auto& ep = endps_[b];
    const int len = static_cast<int>(ch.size());
    const int i = static_cast<int>(std::find(ch.begin(), ch.end(), t) - ch.begin());
    int j = i;
    int jstep, endptrick;
    if (i & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
    } else {
        jstep = -1;
        endptrick = 1;
    }
    while (j != 0) {
        j += jstep;
        t = ch[wrap(j, len)];
        const int p = ep[wrap(j - endptrick, len)] ^ endptrick;
        if (t >= n_)
            augment_blossom(t, endpoint_[p]);
        j += jstep;
        t = ch[wrap(j, len)];
        if (t >= n_)
            augment_blossom(t, endpoint_[p ^ 1]);
        mate_[endpoint_[p]] = p ^ 1;
        mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(ch.begin(), ch.begin() + i, ch.end());
    std::rotate(ep.begin(), ep.begin() + i, ep.end());
    base_[b] = base_[ch[0]];
    assert(base_[b] == v);
}

void BlossomMatcher::augment_matching(int k) {
    const int ends[2][2] = {{edges_[k].u, 2 * k + 1}, {edges_[k].v, 2 * k}};
    for (const auto& start : ends) {
        int s = start[0];
        int p = start[1];
        while (true) {
            const int bs = inblossom_[s];
            assert(label_[bs] == 1);
            if (bs >= n_)
                augment_blossom(bs, s);
            mate_[s] = p;
            if (labelend_[bs] == -1)
                break;
            const int t = endpoint_[labelend_[bs]];
            const int bt = inblossom_[t];
            assert(label_[bt] == 2);
            s = endpoint_[labelend_[bt]];
            const int j = endpoint_[labelend_[bt] ^ 1];
            if (bt >= n_)
                augment_blossom(bt, j);
            mate_[j] = labelend_[bt];
            p = labelend_[bt] ^ 1;
        }
    }
}

std::vector<int> BlossomMatcher::solve() {
    const int n = n_;
    const int m = static_cast<int>(edges_.size());
    if (n == 0 || m == 0)
        return std::vector<int>(n, -1);

    Weight maxweight = 0;
    for (const auto& e : edges_)
        maxweight = std::max(maxweight, e.weight);

    endpoint_.resize(2 * m);
    neighbend_.assign(n, {});
    for (int k = 0; k < m; ++k) {
        endpoint_[2 * k] = edges_[k].u;
        endpoint_[2 * k + 1] = edges_[k].v;
        neighbend_[edges_[k].u].push_back(2 * k + 1);
        neighbend_[edges_[k].v].push_back(2 * k);
    }
    mate_.assign(n, -1);
    label_.assign(2 * n, 0);
    labelend_.assign(2 * n, -1);
    inblossom_.resize(n);
    for (int v = 0; v < n; ++v)
        inblossom_[v] = v;
    parent_.assign(2 * n, -1);
    childs_.assign(2 * n, {});
    endps_.assign(2 * n, {});
    base_.assign(2 * n, -1);
    for (int v = 0; v < n; ++v)
        base_[v] = v;
    bestedge_.assign(2 * n, -1);
    bestedges_.assign(2 * n, {});
    has_bestedges_.assign(2 * n, 0);
    unused_.clear();
    for (int b = 2 * n - 1; b >= n; --b)
        unused_.push_back(b);
    dual_.assign(2 * n, 0);
    for (int v = 0; v < n; ++v)
        dual_[v] = maxweight;
    allowedge_.assign(m, 0);

    for (int stage = 0; stage < n; ++stage) {
        std::fill(label_.begin(), label_.end(), 0);
        std::fill(bestedge_.begin(), bestedge_.end(), -1);
        for (int b = n; b < 2 * n; ++b) {
            bestedges_[b].clear();
            has_bestedges_[b] = 0;
        }
        std::fill(allowedge_.begin(), allowedge_.end(), 0);
        queue_.clear();

        for (int v = 0; v < n; ++v)
            if (mate_[v] == -1 && label_[inblossom_[v]] == 0)
                assign_label(v, 1, -1);

        bool augmented = false;
        while (true) {
            while (!queue_.empty() && !augmented) {
                const int v = queue_.back();
                queue_.pop_back();
                assert(label_[inblossom_[v]] == 1);
                for (int p : neighbend_[v]) {
                    const int k = p / 2;
                    const int w = endpoint_[p];
                    if (inblossom_[v] == inblossom_[w])
                        continue;
                    Weight kslack = 0;
                    if (!allowedge_[k]) {
                        kslack = slack(k);
                        if (kslack <= 0)
                            allowedge_[k] = 1;
                    }
                    if (allowedge_[k]) {
                        if (label_[inblossom_[w]] == 0) {
                            assign_label(w, 2, p ^ 1);
                        } else if (label_[inblossom_[w]] == 1) {
                            const int base = scan_blossom(v, w);
                            if (base >= 0) {
                                add_blossom(base, k);
                            } else {
                                augment_matching(k);
                                augmented = true;
                                break;
                            }
                        } else if (label_[w] == 0) {
                            assert(label_[inblossom_[w]] == 2);
                            label_[w] = 2;
                            labelend_[w] = p ^ 1;
                        }
                    } else if (label_[inblossom_[w]] == 1) {
                        const int b = inblossom_[v];
                        if (bestedge_[b] == -1 || kslack < slack(bestedge_[b]))
                            bestedge_[b] = k;
                    } else if (label_[w] == 0) {
                        if (bestedge_[w] == -1 || kslack < slack(bestedge_[w]))
                            bestedge_[w] = k;
                    }
                }
            }
            if (augmented)
                break;

            // Dual adjustment: pick the smallest admissible delta.
            int deltatype = 1;
            Weight delta = *std::min_element(dual_.begin(), dual_.begin() + n);
            int deltaedge = -1, deltablossom = -1;
            for (int v = 0; v < n; ++v)
                if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                    const Weight d = slack(bestedge_[v]);
                    if (d < delta) {
                        delta = d;
                        deltatype = 2;
                        deltaedge = bestedge_[v];
                    }
                }
            for (int b = 0; b < 2 * n; ++b)
                if (parent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                    const Weight d = slack(bestedge_[b]) / 2;
                    if (d < delta) {
                        delta = d;
                        deltatype = 3;
                        deltaedge = bestedge_[b];
                    }
                }
            for (int b = n; b < 2 * n; ++b)
                if (base_[b] >= 0 && parent_[b] == -1 && label_[b] == 2 && dual_[b] < delta) {
                    delta = dual_[b];
                    deltatype = 4;
                    deltablossom = b;
                }

            for (int v = 0; v < n; ++v) {
                const int l = label_[inblossom_[v]];
                if (l == 1)
                    dual_[v] -= delta;
                else if (l == 2)
                    dual_[v] += delta;
            }
            for (int b = n; b < 2 * n; ++b)
                if (base_[b] >= 0 && parent_[b] == -1) {
                    if (label_[b] == 1)
                        dual_[b] += delta;
                    else if (label_[b] == 2)
                        dual_[b] -= delta;
                }

            if (deltatype == 1) {
                break;  // optimum reached
            } else if (deltatype == 2) {
                allowedge_[deltaedge] = 1;
                int i = edges_[deltaedge].u;
                int j = edges_[deltaedge].v;
                if (label_[inblossom_[i]] == 0)
                    std::swap(i, j);
                assert(label_[inblossom_[i]] == 1);
                queue_.push_back(i);
            } else if (deltatype == 3) {
                allowedge_[deltaedge] = 1;
                const int i = edges_[deltaedge].u;
                assert(label_[inblossom_[i]] == 1);
                queue_.push_back(i);
            } else {
                expand_blossom(deltablossom, false);
            }
        }
        if (!augmented)
            break;

        for (int b = n; b < 2 * n; ++b)
            if (parent_[b] == -1 && base_[b] >= 0 && label_[b] == 1 && dual_[b] == 0)
                expand_blossom(b, true);
    }

    std::vector<int> out(n, -1);
    for (int v = 0; v < n; ++v)
        if (mate_[v] >= 0)
            out[v] = endpoint_[mate_[v]];
    return out;
}

}  // namespace

std::vector<int> max_weight_matching(int vertex_count,
                                     std::span<const MatchEdge<std::int64_t>> edges) {
    std::vector<MatchEdge<std::int64_t>> kept;
    for (const auto& e : edges) {
        if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count || e.u == e.v)
            throw InputError("matching edge has an invalid endpoint");
        if (e.weight > 0)
            kept.push_back({e.u, e.v, 2 * e.weight});  // doubling keeps S-S slack halves integral
    }
    return BlossomMatcher(vertex_count, std::move(kept)).solve();
}

std::vector<int> max_weight_matching(int vertex_count, std::span<const MatchEdge<double>> edges,
                                     double* scale_out) {
    double top = 0.0;
    for (const auto& e : edges) {
        if (!std::isfinite(e.weight))
            throw InputError("matching edge weight is not finite");
        top = std::max(top, e.weight);
    }
    // Largest power of two up to 2^40 that keeps duals well inside int64.
    int exponent = 40;
    if (top > 0.0)
        exponent = std::min(40, 56 - static_cast<int>(std::ceil(std::log2(top + 1.0))));
    const double scale = std::ldexp(1.0, exponent);
    if (scale_out)
        *scale_out = scale;
    std::vector<MatchEdge<std::int64_t>> scaled;
    scaled.reserve(edges.size());
    for (const auto& e : edges)
        scaled.push_back({e.u, e.v, static_cast<std::int64_t>(std::llround(e.weight * scale))});
    return max_weight_matching(vertex_count, std::span<const MatchEdge<std::int64_t>>(scaled));
}

std::vector<int> brute_force_matching(int vertex_count, std::span<const MatchEdge<double>> edges,
                                      int max_vertices) {
    if (vertex_count > max_vertices)
        throw SizeGuardError("exhaustive matching limited to " + std::to_string(max_vertices) +
                             " vertices (got " + std::to_string(vertex_count) + ")");
    const int n = vertex_count;
    constexpr double kNone = -std::numeric_limits<double>::infinity();
    std::vector<double> w(static_cast<std::size_t>(n) * n, kNone);
    for (const auto& e : edges) {
        auto& a = w[e.u * n + e.v];
        a = std::max(a, e.weight);
        w[e.v * n + e.u] = a;
    }
    const std::uint32_t full = n == 0 ? 0u : ((1u << n) - 1u);
    // best[mask]: optimum over vertex subset mask; choice records the partner
    // of the lowest vertex (-1 when it stays single).
    std::vector<double> best(static_cast<std::size_t>(full) + 1, 0.0);
    std::vector<std::int8_t> choice(static_cast<std::size_t>(full) + 1, -1);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const int i = __builtin_ctz(mask);
        const std::uint32_t rest = mask & ~(1u << i);
        double top = best[rest];
        std::int8_t pick = -1;
        for (std::uint32_t r = rest; r; r &= r - 1) {
            const int j = __builtin_ctz(r);
            const double wij = w[i * n + j];
            if (wij == kNone)
                continue;
            const double cand = wij + best[rest & ~(1u << j)];
            if (cand > top) {
                top = cand;
                pick = static_cast<std::int8_t>(j);
            }
        }
        best[mask] = top;
        choice[mask] = pick;
    }
    std::vector<int> mate(n, -1);
    for (std::uint32_t mask = full; mask;) {
        const int i = __builtin_ctz(mask);
        mask &= ~(1u << i);
        if (const int j = choice[mask | (1u << i)]; j >= 0) {
            mate[i] = j;
            mate[j] = i;
            mask &= ~(1u << j);
        }
    }
    return mate;
}

double matching_weight(std::span<const int> mate, std::span<const MatchEdge<double>> edges) {
    std::map<std::pair<int, int>, double> heaviest;
    for (const auto& e : edges) {
        auto key = std::minmax(e.u, e.v);
        auto [it, fresh] = heaviest.try_emplace(key, e.weight);
        if (!fresh)
            it->second = std::max(it->second, e.weight);
    }
    double total = 0.0;
    for (int v = 0; v < static_cast<int>(mate.size()); ++v)
        if (mate[v] > v)
            total += heaviest.at({v, mate[v]});
    return total;
}

}  // namespace ipaths
