#include "ksat/knowledge.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ksat/kernels.hpp"
#include "ksat/rng.hpp"

namespace ksat {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string lowercase(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

KnowledgeGraph::KnowledgeGraph(const std::vector<Triple>& triples) {
    std::set<std::string> ns, rs;
    std::set<Triple> ts;
    for (const Triple& t : triples) {
        if (t.subject.empty() || t.predicate.empty() || t.object.empty())
            throw DomainError("Triple with empty field");
        ns.insert(t.subject);
        ns.insert(t.object);
        rs.insert(t.predicate);
        ts.insert(t);
    }
    nodes_.assign(ns.begin(), ns.end());
    relations_.assign(rs.begin(), rs.end());
    triples_.assign(ts.begin(), ts.end());
    triple_set_.insert(triples_.begin(), triples_.end());
}

void EmbeddingTable::set(const std::string& id, std::vector<double> vec) {
    if (vec.size() != dimension_)
        throw DomainError("vector for '" + id + "' has length " + std::to_string(vec.size()) +
                          ", table dimension is " + std::to_string(dimension_));
    for (double v : vec)
        if (!std::isfinite(v)) throw DomainError("non-finite component for '" + id + "'");
    entries_[id] = std::move(vec);
}

const std::vector<double>* EmbeddingTable::find(const std::string& id) const {
    auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> EmbeddingTable::sorted_keys() const {
    std::vector<std::string> keys;
    keys.reserve(entries_.size());
    for (const auto& [k, v] : entries_) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    return keys;
}

KnowledgeGraph load_triples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open triple file: " + path);
    std::vector<Triple> triples;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        std::size_t t3 = t2 == std::string::npos ? std::string::npos : line.find('\t', t2 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos || t3 != std::string::npos)
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": expected exactly three tab-separated fields");
        Triple t{trim(line.substr(0, t1)), trim(line.substr(t1 + 1, t2 - t1 - 1)),
                 trim(line.substr(t2 + 1))};
        if (t.subject.empty() || t.predicate.empty() || t.object.empty())
            throw ParseError(path + ":" + std::to_string(lineno) + ": empty field");
        triples.push_back(std::move(t));
    }
    return KnowledgeGraph(triples);
}

std::pair<KnowledgeGraph, std::vector<Triple>> holdout_split(const KnowledgeGraph& kg,
                                                             double fraction,
                                                             std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw DomainError("holdout fraction must be in (0,1), got " + std::to_string(fraction));
    const std::size_t m = kg.size();
    if (m < 2) throw DomainError("holdout_split needs at least 2 triples");
    const std::size_t k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(m)));
    if (k < 1 || k >= m)
        throw DomainError("holdout of " + std::to_string(k) + " from " + std::to_string(m) +
                          " triples leaves no train set");
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    Rng rng(seed);
    rng.shuffle(idx);
    std::vector<Triple> heldout, train;
    heldout.reserve(k);
    train.reserve(m - k);
    std::vector<bool> held(m, false);
    for (std::size_t i = 0; i < k; ++i) held[idx[i]] = true;
    for (std::size_t i = 0; i < m; ++i)
        (held[i] ? heldout : train).push_back(kg.triples()[i]);
    return {KnowledgeGraph(train), std::move(heldout)};
}

std::vector<LabeledTriple> sample_negatives(const KnowledgeGraph& kg,
                                            const std::vector<Triple>& positives,
                                            std::uint64_t seed) {
    if (kg.nodes().size() < 2) throw DomainError("sample_negatives needs at least 2 nodes");
    Rng rng(seed);
    const auto& nodes = kg.nodes();
    std::vector<LabeledTriple> out;
    out.reserve(positives.size() * 2);
    for (const Triple& p : positives) out.push_back({p, true});
    for (const Triple& p : positives) {
        Triple neg = p;
        bool found = false;
        for (int attempt = 0; attempt < 100 && !found; ++attempt) {
            neg.object = nodes[rng.next_index(nodes.size())];
            found = !kg.contains(neg);
        }
        if (!found) {
            neg = p;
            for (int attempt = 0; attempt < 100 && !found; ++attempt) {
                neg.subject = nodes[rng.next_index(nodes.size())];
                found = !kg.contains(neg);
            }
        }
        if (!found)
            throw DomainError("degenerate graph: no valid corruption for (" + p.subject + ", " +
                              p.predicate + ", " + p.object + ")");
        out.push_back({neg, false});
    }
    return out;
}

EmbeddingTable load_embedding_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open embedding file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream header(line);
    long long count = -1, dim = -1;
    if (!(header >> count >> dim) || count < 0 || dim <= 0)
        throw ParseError(path + ":1: header must be '<count> <dimension>'");
    std::string rest;
    if (header >> rest) throw ParseError(path + ":1: trailing content in header");
    EmbeddingTable table(static_cast<std::size_t>(dim));
    std::size_t lineno = 1, loaded = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string id;
        row >> id;
        std::vector<double> vec;
        vec.reserve(static_cast<std::size_t>(dim));
        double v;
        while (row >> v) vec.push_back(v);
        if (!row.eof())
            throw ParseError(path + ":" + std::to_string(lineno) + ": malformed number");
        if (vec.size() != static_cast<std::size_t>(dim))
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected " +
                             std::to_string(dim) + " values, got " + std::to_string(vec.size()));
        for (double x : vec)
            if (!std::isfinite(x))
                throw ParseError(path + ":" + std::to_string(lineno) + ": non-finite value");
        table.set(id, std::move(vec));
        ++loaded;
    }
    if (loaded != static_cast<std::size_t>(count))
        throw ParseError(path + ": header declares " + std::to_string(count) + " entries, found " +
                         std::to_string(loaded));
    return table;
}

void write_embedding_file(const EmbeddingTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write embedding file: " + path);
    auto keys = table.sorted_keys();
    out << keys.size() << ' ' << table.dimension() << '\n';
    char buf[64];
    for (const auto& key : keys) {
        out << key;
        for (double v : *table.find(key)) {
            std::snprintf(buf, sizeof buf, "%.9g", v);
            out << ' ' << buf;
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

namespace {

double norm2(const double* v, std::size_t d) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += v[i] * v[i];
    return std::sqrt(s);
}

void renormalize(double* v, std::size_t d) {
    double n = norm2(v, d);
    if (n > 1e-12)
        for (std::size_t i = 0; i < d; ++i) v[i] /= n;
}

}  // namespace

EmbeddingTable train_translational(const KnowledgeGraph& kg, std::size_t d_g,
                                   std::size_t epochs, double learning_rate,
                                   std::uint64_t seed) {
    if (kg.size() == 0) throw DomainError("train_translational: empty graph");
    if (d_g == 0) throw DomainError("train_translational: d_g must be positive");
    constexpr double kMargin = 1.0;

    const auto& nodes = kg.nodes();
    const auto& relations = kg.relations();
    const std::size_t n_nodes = nodes.size();

    std::unordered_map<std::string, std::size_t> node_id, rel_id;
    for (std::size_t i = 0; i < n_nodes; ++i) node_id[nodes[i]] = i;
    for (std::size_t i = 0; i < relations.size(); ++i) rel_id[relations[i]] = i;

    Rng rng(seed);
    const double bound = 6.0 / std::sqrt(static_cast<double>(d_g));
    std::vector<double> ent(n_nodes * d_g), rel(relations.size() * d_g);
    for (double& x : ent) x = rng.next_double(-bound, bound);
    for (double& x : rel) x = rng.next_double(-bound, bound);
    for (std::size_t i = 0; i < n_nodes; ++i) renormalize(&ent[i * d_g], d_g);

    struct Edge {
        std::size_t s, r, o;
    };
    std::vector<Edge> edges;
    edges.reserve(kg.size());
    for (const Triple& t : kg.triples())
        edges.push_back({node_id[t.subject], rel_id[t.predicate], node_id[t.object]});

    std::vector<std::size_t> order(edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    std::vector<double> dpos(d_g), dneg(d_g);
    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        // Linear learning-rate decay stabilizes boundary pairs late in training.
        const double lr = learning_rate *
                          (1.0 - static_cast<double>(epoch) / static_cast<double>(epochs));
        rng.shuffle(order);
        for (std::size_t oi : order) {
            const Edge e = edges[oi];
            // Corrupt the object first; fall back to the subject.
            std::size_t ns = e.s, no = e.o;
            bool found = false;
            Triple probe{nodes[e.s], relations[e.r], ""};
            for (int attempt = 0; attempt < 100 && !found; ++attempt) {
                no = rng.next_index(n_nodes);
                probe.object = nodes[no];
                found = !kg.contains(probe);
            }
            if (!found) {
                no = e.o;
                probe.object = nodes[e.o];
                for (int attempt = 0; attempt < 100 && !found; ++attempt) {
                    ns = rng.next_index(n_nodes);
                    probe.subject = nodes[ns];
                    found = !kg.contains(probe);
                }
                if (!found) continue;  // no corruption exists for this positive
            }

            double* vs = &ent[e.s * d_g];
            double* vo = &ent[e.o * d_g];
            double* vns = &ent[ns * d_g];
            double* vno = &ent[no * d_g];
            double* vr = &rel[e.r * d_g];

            double dp2 = 0.0, dn2 = 0.0;
            for (std::size_t k = 0; k < d_g; ++k) {
                dpos[k] = vs[k] + vr[k] - vo[k];
                dneg[k] = vns[k] + vr[k] - vno[k];
                dp2 += dpos[k] * dpos[k];
                dn2 += dneg[k] * dneg[k];
            }
            const double np = std::sqrt(dp2), nn = std::sqrt(dn2);
            if (kMargin + np - nn <= 0.0) continue;

            const double ip = 1.0 / (np + 1e-12), in = 1.0 / (nn + 1e-12);
            for (std::size_t k = 0; k < d_g; ++k) {
                const double gp = dpos[k] * ip;  // d||s+r-o|| / d(s+r-o)
                const double gn = dneg[k] * in;
                vs[k] -= lr * gp;
                vo[k] += lr * gp;
                vns[k] += lr * gn;
                vno[k] -= lr * gn;
                vr[k] -= lr * (gp - gn);
            }
            renormalize(vs, d_g);
            renormalize(vo, d_g);
            renormalize(vns, d_g);
            renormalize(vno, d_g);
        }
    }

    EmbeddingTable table(d_g);
    for (std::size_t i = 0; i < n_nodes; ++i)
        table.set(nodes[i], std::vector<double>(ent.begin() + i * d_g, ent.begin() + (i + 1) * d_g));
    for (std::size_t i = 0; i < relations.size(); ++i)
        table.set(relations[i],
                  std::vector<double>(rel.begin() + i * d_g, rel.begin() + (i + 1) * d_g));
    return table;
}

EmbeddingTable sum_tables(const std::vector<EmbeddingTable>& tables) {
    if (tables.empty()) throw DomainError("sum_tables: empty table list");
    const std::size_t d = tables.front().dimension();
    for (const auto& t : tables)
        if (t.dimension() != d)
            throw DomainError("sum_tables: dimension mismatch, " + std::to_string(d) + " vs " +
                              std::to_string(t.dimension()));
    EmbeddingTable out(d);
    std::set<std::string> keys;
    for (const auto& t : tables)
        for (const auto& k : t.sorted_keys()) keys.insert(k);
    for (const auto& key : keys) {
        std::vector<double> sum(d, 0.0);
        for (const auto& t : tables)
            if (const auto* v = t.find(key))
                for (std::size_t i = 0; i < d; ++i) sum[i] += (*v)[i];
        out.set(key, std::move(sum));
    }
    return out;
}

std::vector<std::optional<std::string>> link_tokens(const std::vector<std::string>& tokens,
                                                    const EmbeddingTable& table) {
    std::vector<std::optional<std::string>> links;
    links.reserve(tokens.size());
    for (const auto& tok : tokens) {
        std::string key = lowercase(tok);
        if (table.find(key))
            links.emplace_back(std::move(key));
        else
            links.emplace_back(std::nullopt);
    }
    return links;
}

KnowledgeContext build_context(const std::vector<std::string>& tokens,
                               const EmbeddingTable& table) {
    KnowledgeContext ctx;
    ctx.length = tokens.size();
    ctx.links = link_tokens(tokens, table);
    ctx.g = Matrix(ctx.length, table.dimension());
    for (std::size_t i = 0; i < ctx.length; ++i) {
        if (!ctx.links[i]) continue;
        const auto* v = table.find(*ctx.links[i]);
        if (!v) continue;
        for (std::size_t j = 0; j < table.dimension(); ++j) ctx.g(i, j) = (*v)[j];
    }
    ctx.k = kernels::gram(ctx.g);
    return ctx;
}

}  // namespace ksat
