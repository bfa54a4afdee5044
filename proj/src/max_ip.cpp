#include "ipaths/max_ip.hpp"

#include <algorithm>
#include <unordered_map>

#include "ipaths/errors.hpp"
#include "ipaths/simd/kernels.hpp"

namespace ipaths {

namespace {

void require_dag(const SearchGraph& g) {
    if (!g.is_dag())
        throw DomainError(
            "graph contains a directed cycle; the dynamic program needs a DAG "
            "(small cyclic graphs can be solved exhaustively with `oracle max-ip`)");
}

bool is_active(const MaxIpOptions& opt, EdgeId e) { return !opt.mask || opt.mask->active(e); }

InterestingPath make_path(const SearchGraph& g, std::vector<EdgeId> edges, double value) {
    ResolvedSignature sig;
    for (EdgeId e : edges)
        if (!g.edge(e).signature.is_wildcard()) {
            sig = g.edge(e).signature;
            break;
        }
    return InterestingPath{std::move(edges), std::move(sig), value};
}

void check_lengths(const MaxIpOptions& opt) {
    if (opt.min_length < 1)
        throw ParameterError("minimum path length must be >= 1");
    if (opt.max_length && *opt.max_length < opt.min_length)
        throw ParameterError("maximum path length is below the minimum");
}

}  // namespace

// ---------------------------------------------------------------------------
// Dense table

DenseScoreTable::DenseScoreTable(const SearchGraph& g, const MaxIpOptions& options) : g_(&g) {
    require_dag(g);
    check_lengths(options);
    const int m = g.edge_count();
    if (m == 0)
        return;
    columns_ = std::max(1, *g.stats().diameter);
    if (options.max_length)
        columns_ = std::min(columns_, *options.max_length);
    const std::size_t J = static_cast<std::size_t>(columns_);

    score_.assign(static_cast<std::size_t>(m) * J, kNoScore);
    pred_.assign(static_cast<std::size_t>(m) * J, -1);
    const std::vector<double> factors = rank_factors(columns_ + 1);
    const auto& k = simd::kernels();

    std::vector<double> merged(J);
    std::vector<std::int64_t> merged_arg(J);
    std::vector<int> classes_here;

    for (VertexId v : *g.topological_order()) {
        classes_here.clear();
        for (EdgeId e : g.out_edges(v))
            if (is_active(options, e)) {
                int c = g.signature_class(e);
                if (std::find(classes_here.begin(), classes_here.end(), c) == classes_here.end())
                    classes_here.push_back(c);
            }

        for (int c : classes_here) {
            // Step 1: union of incoming rows of this signature.
            std::fill(merged.begin(), merged.end(), kNoScore);
            std::fill(merged_arg.begin(), merged_arg.end(), -1);
            if (J > 1)
                for (EdgeId in : g.in_edges(v))
                    if (is_active(options, in) && g.signature_class(in) == c)
                        k.merge_max(merged.data(), merged_arg.data(), &score_[in * J], in, J - 1);

            // Step 2: shift into every outgoing row of the same signature.
            for (EdgeId out : g.out_edges(v)) {
                if (!is_active(options, out) || g.signature_class(out) != c)
                    continue;
                const double w = g.edge(out).weight;
                double* row = &score_[out * J];
                row[0] = 0.0 + w * factors[1];
                if (J > 1) {
                    k.extend_row(row + 1, merged.data(), w, factors.data() + 2, J - 1);
                    std::copy(merged_arg.begin(), merged_arg.end() - 1, pred_.begin() + out * J + 1);
                }
            }
        }
    }
}

double DenseScoreTable::value(EdgeId e, int length) const {
    if (length < 1 || length > columns_)
        return kNoScore;
    return score_[static_cast<std::size_t>(e) * columns_ + (length - 1)];
}

std::optional<CellRef> DenseScoreTable::best(int min_length, std::optional<int> max_length) const {
    std::optional<CellRef> out;
    double top = kNoScore;
    const int hi = std::min(columns_, max_length.value_or(columns_));
    for (int len = std::max(1, min_length); len <= hi; ++len)
        for (EdgeId e = 0; e < g_->edge_count(); ++e) {
            double s = value(e, len);
            if (s > top) {
                top = s;
                out = CellRef{e, len};
            }
        }
    return out;
}

std::vector<EdgeId> DenseScoreTable::backtrack(CellRef cell) const {
    std::vector<EdgeId> seq;
    EdgeId e = cell.edge;
    for (int len = cell.length; len >= 1; --len) {
        seq.push_back(e);
        if (len > 1)
            e = static_cast<EdgeId>(pred_[static_cast<std::size_t>(e) * columns_ + (len - 1)]);
    }
    std::reverse(seq.begin(), seq.end());
    return seq;
}

std::size_t DenseScoreTable::stored_cells() const {
    return static_cast<std::size_t>(
        std::count_if(score_.begin(), score_.end(), [](double s) { return s != kNoScore; }));
}

std::size_t DenseScoreTable::bytes() const noexcept {
    return score_.size() * sizeof(double) + pred_.size() * sizeof(std::int64_t);
}

// ---------------------------------------------------------------------------
// Sparse table

ScoreTable::ScoreTable(const SearchGraph& g, const MaxIpOptions& options) : g_(&g) {
    require_dag(g);
    check_lengths(options);
    const int m = g.edge_count();
    cells_.assign(m, {});

    // S1: every active edge is a 1-path.
    std::vector<EdgeId> frontier;
    const double f1 = rank_factor(1);
    for (EdgeId e = 0; e < m; ++e)
        if (is_active(options, e)) {
            cells_[e].push_back({1, 0.0 + g.edge(e).weight * f1, -1, -1});
            frontier.push_back(e);
        }

    struct Slot {
        double score;
        EdgeId edge;
        std::int32_t cell;
    };
    const std::int64_t classes = std::max<std::int64_t>(1, g.signature_classes().size() + 1);
    std::unordered_map<std::int64_t, Slot> slots;
    std::vector<std::int64_t> touched;
    std::vector<std::pair<EdgeId, Cell>> pending;
    std::vector<EdgeId> next;

    // S2, semi-naively: the only lengths a sweep can add are t + 1, and only
    // from edges that gained length t in the previous sweep.
    for (int t = 1; !frontier.empty(); ++t) {
        ++iterations_;
        if (options.max_length && t >= *options.max_length)
            break;
        slots.clear();
        touched.clear();
        for (EdgeId e : frontier) {  // ascending, so ties keep the smaller id
            const auto& e_ref = g.edge(e);
            const std::int64_t key = e_ref.target * classes + (g.signature_class(e) + 1);
            const Cell& c = cells_[e].back();
            auto [it, fresh] = slots.try_emplace(
                key, Slot{c.score, e, static_cast<std::int32_t>(cells_[e].size() - 1)});
            if (fresh)
                touched.push_back(key);
            else if (c.score > it->second.score)
                it->second = Slot{c.score, e, static_cast<std::int32_t>(cells_[e].size() - 1)};
        }

        const double factor = rank_factor(t + 1);
        pending.clear();
        for (std::int64_t key : touched) {
            const VertexId v = static_cast<VertexId>(key / classes);
            const int cls = static_cast<int>(key % classes) - 1;
            const Slot& s = slots.at(key);
            for (EdgeId out : g.out_edges(v)) {
                if (!is_active(options, out) || g.signature_class(out) != cls)
                    continue;
                const double gain = g.edge(out).weight * factor;
                pending.push_back({out, Cell{t + 1, s.score + gain, s.edge, s.cell}});
            }
        }

        next.clear();
        for (auto& [e, cell] : pending) {
            cells_[e].push_back(cell);
            next.push_back(e);
        }
        std::sort(next.begin(), next.end());
        frontier.swap(next);
    }

    for (const auto& row : cells_)
        stored_ += row.size();
}

std::vector<int> ScoreTable::lengths(EdgeId e) const {
    std::vector<int> out;
    for (const auto& c : cells_.at(e))
        out.push_back(c.length);
    return out;
}

double ScoreTable::value(EdgeId e, int length) const {
    for (const auto& c : cells_.at(e))
        if (c.length == length)
            return c.score;
    return kNoScore;
}

std::optional<CellRef> ScoreTable::best(int min_length, std::optional<int> max_length) const {
    // Scan by (length, edge id) so the first strict maximum wins ties.
    int longest = 0;
    for (const auto& row : cells_)
        if (!row.empty())
            longest = std::max(longest, row.back().length);
    const int hi = std::min(longest, max_length.value_or(longest));
    std::vector<std::size_t> cursor(cells_.size(), 0);
    std::optional<CellRef> out;
    double top = kNoScore;
    for (int len = 1; len <= hi; ++len)
        for (std::size_t e = 0; e < cells_.size(); ++e) {
            const auto& row = cells_[e];
            auto& i = cursor[e];
            if (i < row.size() && row[i].length == len) {
                if (len >= min_length && row[i].score > top) {
                    top = row[i].score;
                    out = CellRef{static_cast<EdgeId>(e), len};
                }
                ++i;
            }
        }
    return out;
}

std::vector<EdgeId> ScoreTable::backtrack(CellRef cell) const {
    const auto& row = cells_.at(cell.edge);
    auto it = std::find_if(row.begin(), row.end(),
                           [&](const Cell& c) { return c.length == cell.length; });
    if (it == row.end())
        throw std::out_of_range("no cell at the requested length");
    std::vector<EdgeId> seq{cell.edge};
    EdgeId e = it->pred_edge;
    std::int32_t idx = it->pred_cell;
    while (e >= 0) {
        seq.push_back(e);
        const Cell& c = cells_[e][idx];
        e = c.pred_edge;
        idx = c.pred_cell;
    }
    std::reverse(seq.begin(), seq.end());
    return seq;
}

std::size_t ScoreTable::bytes() const noexcept {
    std::size_t total = cells_.capacity() * sizeof(std::vector<Cell>);
    for (const auto& row : cells_)
        total += row.capacity() * sizeof(Cell);
    return total;
}

// ---------------------------------------------------------------------------

MaxIpResult max_ip(const SearchGraph& g, const MaxIpOptions& options) {
    DenseScoreTable table(g, options);
    MaxIpResult result;
    result.stats.columns = table.columns();
    result.stats.stored_cells = table.stored_cells();
    result.stats.table_bytes = table.bytes();
    if (auto cell = table.best(options.min_length, options.max_length))
        result.path = make_path(g, table.backtrack(*cell), table.value(cell->edge, cell->length));
    return result;
}

MaxIpResult max_ip_sparse(const SearchGraph& g, const MaxIpOptions& options) {
    ScoreTable table(g, options);
    MaxIpResult result;
    result.stats.iterations = table.iterations();
    result.stats.stored_cells = table.stored_cells();
    result.stats.table_bytes = table.bytes();
    if (auto cell = table.best(options.min_length, options.max_length))
        result.path = make_path(g, table.backtrack(*cell), table.value(cell->edge, cell->length));
    return result;
}

std::map<EdgeId, double> per_edge_best(const SearchGraph& g, const MaxIpOptions& options) {
    ScoreTable table(g, options);
    std::map<EdgeId, double> out;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto cells = table.cells(e);
        if (cells.empty())
            continue;
        double top = kNoScore;
        for (const auto& c : cells)
            top = std::max(top, c.score);
        out.emplace(e, top);
    }
    return out;
}

}  // namespace ipaths
