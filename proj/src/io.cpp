#include "ipaths/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "ipaths/errors.hpp"
#include "ipaths/scoring.hpp"

namespace ipaths {

namespace {

// Typed accessors that report the JSON field path on failure.

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object())
        throw InputError(path + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        throw InputError(path + (path.empty() ? "" : ".") + key + ": missing field");
    return *it;
}

const Json* optional_field(const Json& obj, const std::string& key) {
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

double as_number(const Json& v, const std::string& path) {
    if (!v.is_number())
        throw InputError(path + ": expected a number");
    return v.get<double>();
}

long long as_integer(const Json& v, const std::string& path) {
    if (!v.is_number_integer())
        throw InputError(path + ": expected an integer");
    return v.get<long long>();
}

int as_int(const Json& v, const std::string& path) {
    const long long x = as_integer(v, path);
    if (x < INT32_MIN || x > INT32_MAX)
        throw InputError(path + ": integer out of range");
    return static_cast<int>(x);
}

std::string as_string(const Json& v, const std::string& path) {
    if (!v.is_string())
        throw InputError(path + ": expected a string");
    return v.get<std::string>();
}

const Json& as_array(const Json& v, const std::string& path) {
    if (!v.is_array())
        throw InputError(path + ": expected an array");
    return v;
}

void check_version(const Json& doc, const std::string& what) {
    if (!doc.is_object())
        throw InputError(what + ": expected a JSON object");
    const int version = as_int(field(doc, "schemaVersion", ""), "schemaVersion");
    if (version != kSchemaVersion)
        throw InputError("schemaVersion: unsupported version " + std::to_string(version) +
                         " (expected " + std::to_string(kSchemaVersion) + ")");
}

Json constants_to_json(const GadgetConstants& c) {
    Json j;
    j["kind"] = c.kind;
    j["k"] = c.k;
    if (c.kind != "dirhc") {
        j["p"] = c.p;
        j["q"] = c.q;
    }
    if (c.w_in)
        j["wIn"] = *c.w_in;
    if (c.w_out)
        j["wOut"] = *c.w_out;
    j["s0"] = c.s0;
    return j;
}

GadgetConstants constants_from_json(const Json& j, const std::string& path) {
    GadgetConstants c;
    c.kind = as_string(field(j, "kind", path), join(path, "kind"));
    c.k = as_int(field(j, "k", path), join(path, "k"));
    if (auto* p = optional_field(j, "p"))
        c.p = as_int(*p, join(path, "p"));
    if (auto* q = optional_field(j, "q"))
        c.q = as_int(*q, join(path, "q"));
    if (auto* w = optional_field(j, "wIn"))
        c.w_in = as_number(*w, join(path, "wIn"));
    if (auto* w = optional_field(j, "wOut"))
        c.w_out = as_number(*w, join(path, "wOut"));
    c.s0 = as_number(field(j, "s0", path), join(path, "s0"));
    return c;
}

}  // namespace

Json stats_to_json(const GraphStats& s) {
    Json j;
    j["n"] = s.n;
    j["m"] = s.m;
    j["maxIndegree"] = s.max_indegree;
    j["diameter"] = s.diameter ? Json(*s.diameter) : Json(nullptr);
    j["isDag"] = s.is_dag;
    j["distinctSignatures"] = s.distinct_signatures;
    return j;
}

Json graph_to_json(const SearchGraph& g, const std::optional<GadgetConstants>& meta) {
    Json doc;
    doc["schemaVersion"] = kSchemaVersion;
    doc["h"] = g.h();
    doc["rule"] = to_string(g.rule());
    doc["tau"] = g.tau();
    Json vertices = Json::array();
    for (const auto& v : g.vertices()) {
        Json jv;
        jv["id"] = v.id;
        jv["weight"] = v.weight;
        jv["filters"] = v.filters;
        if (v.size)
            jv["size"] = *v.size;
        vertices.push_back(std::move(jv));
    }
    doc["vertices"] = std::move(vertices);
    Json edges = Json::array();
    for (const auto& e : g.edges()) {
        Json je;
        je["id"] = e.id;
        je["source"] = e.source;
        je["target"] = e.target;
        je["weight"] = e.weight;
        je["signature"] = e.signature.str();
        if (e.pair_id)
            je["pairId"] = *e.pair_id;
        edges.push_back(std::move(je));
    }
    doc["edges"] = std::move(edges);
    doc["stats"] = stats_to_json(g.stats());
    if (meta)
        doc["meta"] = constants_to_json(*meta);
    return doc;
}

SearchGraph graph_from_json(const Json& doc, std::optional<GadgetConstants>* meta) {
    check_version(doc, "graph");
    const int h = as_int(field(doc, "h", ""), "h");
    const Rule rule = [&] {
        const auto text = as_string(field(doc, "rule", ""), "rule");
        try {
            return parse_rule(text);
        } catch (const Error&) {
            throw InputError("rule: expected \"a\" or \"b\", got \"" + text + "\"");
        }
    }();
    double tau = 0.0;
    if (auto* t = optional_field(doc, "tau"))
        tau = as_number(*t, "tau");

    std::vector<Vertex> vertices;
    const auto& jv = as_array(field(doc, "vertices", ""), "vertices");
    for (std::size_t i = 0; i < jv.size(); ++i) {
        const auto path = index("vertices", i);
        Vertex v;
        v.id = as_int(field(jv[i], "id", path), join(path, "id"));
        v.weight = as_number(field(jv[i], "weight", path), join(path, "weight"));
        if (auto* f = optional_field(jv[i], "filters")) {
            as_array(*f, join(path, "filters"));
            for (std::size_t d = 0; d < f->size(); ++d)
                v.filters.push_back(as_number((*f)[d], index(join(path, "filters"), d)));
        }
        if (auto* s = optional_field(jv[i], "size"))
            v.size = as_int(*s, join(path, "size"));
        vertices.push_back(std::move(v));
    }

    std::vector<Edge> edges;
    const auto& je = as_array(field(doc, "edges", ""), "edges");
    for (std::size_t i = 0; i < je.size(); ++i) {
        const auto path = index("edges", i);
        Edge e;
        e.id = as_int(field(je[i], "id", path), join(path, "id"));
        e.source = as_int(field(je[i], "source", path), join(path, "source"));
        e.target = as_int(field(je[i], "target", path), join(path, "target"));
        e.weight = as_number(field(je[i], "weight", path), join(path, "weight"));
        const auto sig = as_string(field(je[i], "signature", path), join(path, "signature"));
        try {
            e.signature = Signature::parse(sig);
        } catch (const Error& err) {
            throw InputError(join(path, "signature") + ": " + err.what());
        }
        if (auto* p = optional_field(je[i], "pairId"))
            e.pair_id = as_int(*p, join(path, "pairId"));
        edges.push_back(std::move(e));
    }

    if (meta) {
        meta->reset();
        if (auto* m = optional_field(doc, "meta"))
            *meta = constants_from_json(*m, "meta");
    }
    return SearchGraph(std::move(vertices), std::move(edges), h, rule, tau);
}

SearchGraph load_graph(const std::string& path, std::optional<GadgetConstants>* meta) {
    return graph_from_json(read_json_file(path), meta);
}

void save_graph(const std::string& path, const SearchGraph& g,
                const std::optional<GadgetConstants>& meta) {
    write_text_file(path, graph_to_json(g, meta).dump(2) + "\n");
}

Json skeleton_to_json(const Skeleton& sk) {
    Json doc;
    doc["schemaVersion"] = kSchemaVersion;
    doc["h"] = sk.clusters.empty() ? 0 : static_cast<int>(sk.clusters.front().filter_means.size());
    Json clusters = Json::array();
    for (const auto& c : sk.clusters) {
        Json jc;
        jc["id"] = c.id;
        jc["members"] = c.members;
        jc["gMean"] = c.g_mean;
        jc["filterMeans"] = c.filter_means;
        if (c.size)
            jc["size"] = *c.size;
        clusters.push_back(std::move(jc));
    }
    doc["clusters"] = std::move(clusters);
    Json links = Json::array();
    for (auto [a, b] : sk.links)
        links.push_back(Json::array({a, b}));
    doc["links"] = std::move(links);
    return doc;
}

Skeleton skeleton_from_json(const Json& doc) {
    check_version(doc, "skeleton");
    Skeleton sk;
    const auto& jc = as_array(field(doc, "clusters", ""), "clusters");
    for (std::size_t i = 0; i < jc.size(); ++i) {
        const auto path = index("clusters", i);
        Cluster c;
        c.id = as_int(field(jc[i], "id", path), join(path, "id"));
        if (auto* m = optional_field(jc[i], "members")) {
            as_array(*m, join(path, "members"));
            for (std::size_t j = 0; j < m->size(); ++j)
                c.members.push_back(as_string((*m)[j], index(join(path, "members"), j)));
        }
        c.g_mean = as_number(field(jc[i], "gMean", path), join(path, "gMean"));
        const auto fpath = join(path, "filterMeans");
        const auto& fm = as_array(field(jc[i], "filterMeans", path), fpath);
        for (std::size_t d = 0; d < fm.size(); ++d)
            c.filter_means.push_back(as_number(fm[d], index(fpath, d)));
        if (auto* s = optional_field(jc[i], "size"))
            c.size = as_int(*s, join(path, "size"));
        sk.clusters.push_back(std::move(c));
    }
    const auto& jl = as_array(field(doc, "links", ""), "links");
    for (std::size_t i = 0; i < jl.size(); ++i) {
        const auto path = index("links", i);
        if (!jl[i].is_array() || jl[i].size() != 2)
            throw InputError(path + ": expected a pair of cluster ids");
        sk.links.emplace_back(as_int(jl[i][0], index(path, 0)), as_int(jl[i][1], index(path, 1)));
    }
    validate_skeleton(sk);
    return sk;
}

Skeleton load_skeleton(const std::string& path) {
    return skeleton_from_json(read_json_file(path));
}

void save_skeleton(const std::string& path, const Skeleton& sk) {
    write_text_file(path, skeleton_to_json(sk).dump(2) + "\n");
}

ReportPath report_path(const SearchGraph& g, const InterestingPath& p) {
    return ReportPath{p.edges, path_vertices(g, p.edges), to_string(p.signature), p.score};
}

Json report_to_json(const RunReport& r) {
    Json doc;
    doc["schemaVersion"] = kSchemaVersion;
    Json meta;
    meta["command"] = r.command;
    meta["rule"] = r.rule ? Json(to_string(*r.rule)) : Json(nullptr);
    meta["tau"] = r.tau ? Json(*r.tau) : Json(nullptr);
    meta["k"] = r.k ? Json(*r.k) : Json(nullptr);
    meta["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
    meta["logBase"] = kLogBase;
    doc["meta"] = std::move(meta);
    doc["stats"] = r.stats ? stats_to_json(*r.stats) : Json(nullptr);
    Json paths = Json::array();
    for (const auto& p : r.paths) {
        Json jp;
        jp["edges"] = p.edges;
        jp["vertices"] = p.vertices;
        jp["signature"] = p.signature;
        jp["score"] = p.score;
        paths.push_back(std::move(jp));
    }
    doc["paths"] = std::move(paths);
    doc["totalScore"] = r.total_score ? Json(*r.total_score) : Json(nullptr);
    if (r.bounds)
        doc["bounds"] = Json{{"lower", r.bounds->lower}, {"upper", r.bounds->upper}};
    Json timings = Json::object();
    for (const auto& [phase, ms] : r.timings_ms)
        timings[phase] = ms;
    doc["timingsMs"] = std::move(timings);
    if (!r.extra.empty())
        doc["result"] = r.extra;
    return doc;
}

RunReport report_from_json(const Json& doc) {
    check_version(doc, "report");
    RunReport r;
    if (auto* meta = optional_field(doc, "meta")) {
        if (auto* c = optional_field(*meta, "command"))
            r.command = as_string(*c, "meta.command");
        if (auto* rule = optional_field(*meta, "rule"))
            r.rule = parse_rule(as_string(*rule, "meta.rule"));
        if (auto* tau = optional_field(*meta, "tau"))
            r.tau = as_number(*tau, "meta.tau");
        if (auto* k = optional_field(*meta, "k"))
            r.k = as_int(*k, "meta.k");
        if (auto* seed = optional_field(*meta, "seed")) {
            if (!seed->is_number_unsigned() && !seed->is_number_integer())
                throw InputError("meta.seed: expected an integer");
            r.seed = seed->get<std::uint64_t>();
        }
    }
    const auto& jp = as_array(field(doc, "paths", ""), "paths");
    for (std::size_t i = 0; i < jp.size(); ++i) {
        const auto path = index("paths", i);
        ReportPath p;
        const auto epath = join(path, "edges");
        const auto& je = as_array(field(jp[i], "edges", path), epath);
        for (std::size_t j = 0; j < je.size(); ++j)
            p.edges.push_back(as_int(je[j], index(epath, j)));
        const auto vpath = join(path, "vertices");
        const auto& jv = as_array(field(jp[i], "vertices", path), vpath);
        for (std::size_t j = 0; j < jv.size(); ++j)
            p.vertices.push_back(as_int(jv[j], index(vpath, j)));
        p.signature = as_string(field(jp[i], "signature", path), join(path, "signature"));
        p.score = as_number(field(jp[i], "score", path), join(path, "score"));
        r.paths.push_back(std::move(p));
    }
    if (auto* t = optional_field(doc, "totalScore"))
        r.total_score = as_number(*t, "totalScore");
    if (auto* b = optional_field(doc, "bounds"))
        r.bounds = ScoreBounds{as_number(field(*b, "lower", "bounds"), "bounds.lower"),
                               as_number(field(*b, "upper", "bounds"), "bounds.upper")};
    if (auto* t = optional_field(doc, "timingsMs")) {
        if (!t->is_object())
            throw InputError("timingsMs: expected an object");
        for (auto it = t->begin(); it != t->end(); ++it)
            r.timings_ms.emplace_back(it.key(), as_number(it.value(), "timingsMs." + it.key()));
    }
    if (auto* x = optional_field(doc, "result"))
        r.extra = *x;
    return r;
}

std::optional<std::string> check_report(const SearchGraph& g, const RunReport& report,
                                        double tolerance) {
    double total = 0.0;
    for (std::size_t i = 0; i < report.paths.size(); ++i) {
        const auto& p = report.paths[i];
        const auto where = "paths[" + std::to_string(i) + "]";
        auto check = validate_path(g, p.edges);
        if (auto* rej = std::get_if<PathRejection>(&check))
            return where + ": " + rej->message;
        const auto& ip = std::get<InterestingPath>(check);
        if (std::abs(ip.score - p.score) > tolerance)
            return where + ": stored score " + std::to_string(p.score) + " but edges give " +
                   std::to_string(ip.score);
        if (path_vertices(g, p.edges) != p.vertices)
            return where + ": vertex list does not match edges";
        if (to_string(ip.signature) != p.signature)
            return where + ": signature " + p.signature + " but edges resolve to " +
                   to_string(ip.signature);
        total += ip.score;
    }
    if (report.total_score && std::abs(*report.total_score - total) > tolerance)
        return "totalScore: stored " + std::to_string(*report.total_score) + " but paths sum to " +
               std::to_string(total);
    return std::nullopt;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": invalid JSON (" + e.what() + ")");
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    out << text;
    if (!out)
        throw InputError("error while writing '" + path + "'");
}

std::string to_dot(const SearchGraph& g, const std::vector<InterestingPath>& paths) {
    static const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                          "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};
    // edge -> (path index, rank)
    std::map<EdgeId, std::pair<int, int>> on_path;
    for (int p = 0; p < static_cast<int>(paths.size()); ++p)
        for (int r = 0; r < paths[p].length(); ++r)
            on_path.emplace(paths[p].edges[r], std::make_pair(p, r + 1));

    std::ostringstream os;
    os << std::setprecision(6);
    os << "digraph ipaths {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (const auto& v : g.vertices())
        os << "  v" << v.id << " [label=\"" << v.id << "\\n" << v.weight << "\"];\n";
    for (const auto& e : g.edges()) {
        os << "  v" << e.source << " -> v" << e.target << " [label=\"" << e.weight << " / ";
        auto it = on_path.find(e.id);
        if (it == on_path.end()) {
            os << "- / " << e.signature.str() << "\", color=\"#bbbbbb\"";
        } else {
            const auto [p, rank] = it->second;
            os << rank << " / " << e.signature.str() << "\", color=\""
               << palette[p % std::size(palette)] << "\", penwidth=2";
        }
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace ipaths
