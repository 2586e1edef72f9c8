#pragma once

#include "vadam/energy.hpp"
#include "vadam/tensor.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vadam {

/// Step size and moment decay rates shared by all optimizers.
/// Defaults follow the usual Adam constants.
struct Hyper {
    double alpha = 1e-2;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    /// alpha > 0, beta1/beta2 in [0, 1), epsilon > 0.
    void validate() const;
};

/// Per-scalar moments: m and v are both m x n. t counts completed steps.
struct AdamState {
    ParamMatrix m;
    ParamMatrix v;
    long t = 0;

    static AdamState zero(Eigen::Index rows, Eigen::Index cols);
};

/// Per-vector moments: m is m x n but v holds one scalar per row, an n-fold
/// saving on second-moment storage.
struct VectorAdamState {
    ParamMatrix m;
    Eigen::VectorXd v;
    long t = 0;

    static VectorAdamState zero(Eigen::Index rows, Eigen::Index cols);
};

/// Infinity-norm variant: a single shared second moment driven by the
/// largest row-gradient norm.
struct InfVectorAdamState {
    ParamMatrix m;
    double v = 0.0;
    long t = 0;

    static InfVectorAdamState zero(Eigen::Index rows, Eigen::Index cols);
};

/// Plain gradient descent: p - alpha * g.
ParamMatrix gd_step(const ParamMatrix& p, const ParamMatrix& g, double alpha);

/// One Adam step. Updates `s` in place (t incremented) and returns the new
/// parameters:
///   m <- b1*m + (1-b1)*g,  v <- b2*v + (1-b2)*g^2   (per scalar)
///   p <- p - alpha * (m / (1-b1^t)) / (sqrt(v / (1-b2^t)) + eps)
/// Bias correction applies at every step; epsilon sits outside the root.
/// Throws std::invalid_argument on shape mismatch and numeric_error (naming
/// the row) on non-finite gradients.
ParamMatrix adam_step(const ParamMatrix& p, const ParamMatrix& g, AdamState& s,
                      const Hyper& h);

/// One VectorAdam step: the first moment is per scalar, the second moment is
/// the squared Euclidean norm of each row gradient, so each vector parameter
/// is rescaled as a whole and its update keeps the gradient's direction:
///   m_i <- b1*m_i + (1-b1)*g_i          (row vectors)
///   v_i <- b2*v_i + (1-b2)*|g_i|^2      (one scalar per row)
///   p_i <- p_i - alpha * mhat_i / (sqrt(vhat_i) + eps)
/// For n=1 this reduces exactly to adam_step.
ParamMatrix vector_adam_step(const ParamMatrix& p, const ParamMatrix& g,
                             VectorAdamState& s, const Hyper& h);

/// VectorAdam with the second moment driven by the infinity norm over row
/// gradient norms: v <- b2*v + (1-b2) * (max_i |g_i|)^2, every row divided
/// by the same sqrt(vhat) + eps. Remains rotation equivariant because row
/// norms are rotation invariant.
ParamMatrix vector_adam_inf_step(const ParamMatrix& p, const ParamMatrix& g,
                                 InfVectorAdamState& s, const Hyper& h);

enum class OptimizerKind { Gd, Adam, VectorAdam, VectorAdamInf };

/// Maps "gd" | "adam" | "vectoradam" | "vectoradam-inf" to a kind.
/// Throws std::invalid_argument for anything else.
OptimizerKind optimizer_from_id(std::string_view id);
std::string optimizer_id(OptimizerKind kind);

/// A stepper with owned, zero-initialized state. One instance drives one
/// (params, state) pair; instances are independent.
class Optimizer {
public:
    Optimizer(OptimizerKind kind, const Hyper& h, Eigen::Index rows,
              Eigen::Index cols);

    ParamMatrix step(const ParamMatrix& p, const ParamMatrix& g);

    OptimizerKind kind() const { return kind_; }
    const Hyper& hyper() const { return hyper_; }

private:
    OptimizerKind kind_;
    Hyper hyper_;
    std::variant<std::monostate, AdamState, VectorAdamState, InfVectorAdamState>
        state_;
};

/// Snapshots p_0 .. p_T and the loss at each of them; losses[t] is evaluated
/// before step t+1, with the final loss appended, so both vectors have
/// steps+1 entries.
struct Trajectory {
    std::vector<ParamMatrix> snapshots;
    std::vector<double> losses;
};

/// Runs `steps` optimization steps from p0. Deterministic. An energy failure
/// is rethrown as numeric_error with the step index attached.
Trajectory run(OptimizerKind kind, const Hyper& h, const Energy& energy,
               const ParamMatrix& p0, int steps);

} // namespace vadam
