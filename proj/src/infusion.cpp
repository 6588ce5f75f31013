#include "ksat/infusion.hpp"

#include <cmath>

#include "ksat/errors.hpp"
#include "ksat/kernels.hpp"

namespace ksat {

std::string to_string(InfusionPolicy policy) {
    switch (policy) {
        case InfusionPolicy::kNone: return "none";
        case InfusionPolicy::kShallow: return "shallow";
        case InfusionPolicy::kSemiDeep: return "semi-deep";
        case InfusionPolicy::kDeep: return "deep";
    }
    throw DomainError("unknown policy value");
}

InfusionPolicy parse_policy(const std::string& text) {
    if (text == "none") return InfusionPolicy::kNone;
    if (text == "shallow") return InfusionPolicy::kShallow;
    if (text == "semi-deep") return InfusionPolicy::kSemiDeep;
    if (text == "deep") return InfusionPolicy::kDeep;
    throw DomainError("unknown policy '" + text + "' (expected none|shallow|semi-deep|deep)");
}

bool InfusionSites::any() const {
    for (bool b : latent_at)
        if (b) return true;
    for (bool b : attention_at)
        if (b) return true;
    return false;
}

InfusionSites sites_for(InfusionPolicy policy, std::size_t n_blocks) {
    if (n_blocks < 1) throw DomainError("sites_for: n_blocks must be >= 1");
    InfusionSites sites;
    sites.latent_at.assign(n_blocks, false);
    sites.attention_at.assign(n_blocks, false);
    switch (policy) {
        case InfusionPolicy::kNone:
            break;
        case InfusionPolicy::kShallow:
            sites.latent_at[0] = true;
            break;
        case InfusionPolicy::kSemiDeep:
            sites.latent_at[0] = true;
            sites.attention_at[0] = true;
            break;
        case InfusionPolicy::kDeep:
            sites.latent_at.assign(n_blocks, true);
            sites.attention_at.assign(n_blocks, true);
            break;
    }
    return sites;
}

Matrix infuse_latent(const Matrix& h, const Matrix& g, const Matrix& w_g) {
    if (g.cols() != w_g.rows())
        throw DomainError("infuse_latent: G cols " + std::to_string(g.cols()) +
                          " != W_g rows " + std::to_string(w_g.rows()));
    if (h.rows() != g.rows() || h.cols() != w_g.cols())
        throw DomainError("infuse_latent: H is " + std::to_string(h.rows()) + "x" +
                          std::to_string(h.cols()) + ", G*W_g is " + std::to_string(g.rows()) +
                          "x" + std::to_string(w_g.cols()));
    Matrix out = kernels::matmul(g, w_g);
    kernels::axpy(out, 1.0, h);
    return out;
}

Matrix infuse_attention(const Matrix& s, const Matrix& k, std::size_t d_g) {
    if (d_g == 0) throw DomainError("infuse_attention: d_g must be positive");
    if (s.rows() != s.cols() || k.rows() != k.cols() || s.rows() != k.rows())
        throw DomainError("infuse_attention: S is " + std::to_string(s.rows()) + "x" +
                          std::to_string(s.cols()) + ", K is " + std::to_string(k.rows()) + "x" +
                          std::to_string(k.cols()));
    Matrix out = s;
    kernels::axpy(out, 1.0 / std::sqrt(static_cast<double>(d_g)), k);
    return out;
}

}  // namespace ksat
