#pragma once

#include <string>
#include <vector>

#include "ksat/matrix.hpp"

namespace ksat {

enum class InfusionPolicy { kNone, kShallow, kSemiDeep, kDeep };

std::string to_string(InfusionPolicy policy);
InfusionPolicy parse_policy(const std::string& text);

// Per-block infusion flags resolved from a policy.
struct InfusionSites {
    std::vector<bool> latent_at;
    std::vector<bool> attention_at;

    std::size_t n_blocks() const { return latent_at.size(); }
    bool any() const;
};

InfusionSites sites_for(InfusionPolicy policy, std::size_t n_blocks);

// H + G * W_g. Inputs are untouched.
Matrix infuse_latent(const Matrix& h, const Matrix& g, const Matrix& w_g);

// S + K / sqrt(d_g). Inputs are untouched.
Matrix infuse_attention(const Matrix& s, const Matrix& k, std::size_t d_g);

}  // namespace ksat
