#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ksat/matrix.hpp"

namespace ksat {

struct Triple {
    std::string subject;
    std::string predicate;
    std::string object;

    auto operator<=>(const Triple&) const = default;
};

struct TripleHash {
    std::size_t operator()(const Triple& t) const {
        std::size_t h = 1469598103934665603ULL;
        auto mix = [&h](const std::string& s) {
            for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
            h = (h ^ 0x1f) * 1099511628211ULL;
        };
        mix(t.subject);
        mix(t.predicate);
        mix(t.object);
        return h;
    }
};

// Immutable after construction. Node and relation lists are kept sorted so
// every seeded operation iterates in a stable order.
class KnowledgeGraph {
public:
    KnowledgeGraph() = default;
    explicit KnowledgeGraph(const std::vector<Triple>& triples);

    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::vector<std::string>& relations() const { return relations_; }
    const std::vector<Triple>& triples() const { return triples_; }

    bool contains(const Triple& t) const { return triple_set_.contains(t); }
    std::size_t size() const { return triples_.size(); }

private:
    std::vector<std::string> nodes_;      // sorted, unique
    std::vector<std::string> relations_;  // sorted, unique
    std::vector<Triple> triples_;         // sorted, unique
    std::unordered_set<Triple, TripleHash> triple_set_;
};

struct LabeledTriple {
    Triple triple;
    bool label;  // true = held-out positive, false = corrupted negative
};

class EmbeddingTable {
public:
    explicit EmbeddingTable(std::size_t dimension) : dimension_(dimension) {
        if (dimension == 0) throw DomainError("EmbeddingTable dimension must be positive");
    }

    std::size_t dimension() const { return dimension_; }
    std::size_t size() const { return entries_.size(); }

    void set(const std::string& id, std::vector<double> vec);
    const std::vector<double>* find(const std::string& id) const;

    // Keys in sorted order, for deterministic iteration and serialization.
    std::vector<std::string> sorted_keys() const;

private:
    std::size_t dimension_;
    std::unordered_map<std::string, std::vector<double>> entries_;
};

// Token-aligned compression of the graph: G holds one embedding row per
// token (zero when unlinked) and K = G * G^T.
struct KnowledgeContext {
    std::size_t length = 0;
    Matrix g;  // length x d_g
    Matrix k;  // length x length
    std::vector<std::optional<std::string>> links;
};

KnowledgeGraph load_triples(const std::string& path);

std::pair<KnowledgeGraph, std::vector<Triple>> holdout_split(const KnowledgeGraph& kg,
                                                             double fraction,
                                                             std::uint64_t seed);

std::vector<LabeledTriple> sample_negatives(const KnowledgeGraph& kg,
                                            const std::vector<Triple>& positives,
                                            std::uint64_t seed);

EmbeddingTable load_embedding_file(const std::string& path);
void write_embedding_file(const EmbeddingTable& table, const std::string& path);

// Margin-based translational trainer. Produces embeddings for every node
// and every relation in one table; node vectors are kept at unit length.
EmbeddingTable train_translational(const KnowledgeGraph& kg, std::size_t d_g,
                                   std::size_t epochs, double learning_rate,
                                   std::uint64_t seed);

EmbeddingTable sum_tables(const std::vector<EmbeddingTable>& tables);

std::vector<std::optional<std::string>> link_tokens(const std::vector<std::string>& tokens,
                                                    const EmbeddingTable& table);

KnowledgeContext build_context(const std::vector<std::string>& tokens,
                               const EmbeddingTable& table);

}  // namespace ksat
