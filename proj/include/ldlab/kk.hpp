#ifndef LDLAB_KK_HPP
#define LDLAB_KK_HPP

#include "ldlab/gabidulin.hpp"

namespace ldlab {

/// Kötter–Kschischang subspace codes share the Gabidulin parameter block:
/// the same tower, message space, and evaluation points. A codeword is the
/// n-dimensional graph subspace span{(alpha_i, f(alpha_i))} of F_h^{n+t}.
using SubspaceCodeword = FhSubspace;

SubspaceCodeword kk_encode(const GabidulinCode& code, const LinearizedPoly& f);

enum class ChannelMode {
    Uniform,     // H_k(V) uniform among (n-mu)-dim subspaces of V
    FirstCoords  // adversarial fixed choice: span of the first n-mu basis rows
};

struct OperatorChannelOutcome {
    FhSubspace received;   // U = H(V) + E
    int deletions = 0;     // mu
    int insertions = 0;    // dim E
};

/// U = H(V) + E with dim H(V) = n - mu, dim E = rho, E ∩ V = {0}
/// (rejection-sampled), so dim U = n - mu + rho exactly.
OperatorChannelOutcome operator_channel(const GabidulinCode& code, const SubspaceCodeword& v,
                                        int mu, int rho, Rng& rng,
                                        ChannelMode mode = ChannelMode::Uniform);

struct KkDecodeResult {
    std::vector<LinearizedPoly> list;
    int pruned_dim = -1;
    int kernel_dim_q = 0;
};

/// List decoder over the received subspace: interpolate over a canonical
/// basis of U, solve to the periodic space, prune with the design, then keep
/// candidates f with rho_f + s*mu_f < s(n-k+1), where mu_f and rho_f are the
/// deletion/insertion counts the channel must have committed if f was sent
/// (computed from dim(V_f ∩ U)). The canonical basis makes the decoder
/// basis-independent by construction.
KkDecodeResult kk_list_decode(const SubcodeSpec& spec, const FhSubspace& u, int s);

}  // namespace ldlab

#endif
