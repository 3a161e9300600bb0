#pragma once

#include <vector>

#include <Eigen/Dense>

#include "shiftchol/shift_op.hpp"

namespace shiftchol {

/// w[k] = C A^k X0. X0 may carry b columns, one per basis initial condition,
/// so each sample is a p×b matrix.
struct Triple {
    Eigen::MatrixXd C;
    Eigen::MatrixXd A;
    Eigen::MatrixXd X0;

    int outputs() const { return int(C.rows()); }
    int state_dim() const { return int(A.rows()); }
    int bundle() const { return int(X0.cols()); }

    static Triple zero(int p, int b);
    /// C (rI)^k x0 with a state of the size of x0.
    static Triple geometric(const Eigen::MatrixXd& C, double r, const Eigen::MatrixXd& X0);
    /// Finitely supported sequence with the given samples (each p×b).
    static Triple finite(const std::vector<Eigen::MatrixXd>& values);
};

Eigen::MatrixXd sample(const Triple& T, int k);
Eigen::MatrixXd first(const Triple& T);
/// Samples 0..n-1.
std::vector<Eigen::MatrixXd> samples(const Triple& T, int n);

Triple apply_q(const Triple& T);
/// Block form x̄0 = [x0; 0], Ā = [A 0; I 0], C̄ = [0 C].
Triple apply_qstar(const Triple& T);
Triple apply_shiftop(const ShiftOp& x, const Triple& T);
Triple scale_pointwise(const PartialSums& p, const Triple& T);
Triple add(const Triple& T1, const Triple& T2);
Triple scale(double c, const Triple& T);
/// Output row i as a single-output triple.
Triple select_output(const Triple& T, int i);

/// Advisory ℓ2 check: |sample(k)| < rel * max of the first few samples.
bool decays(const Triple& T, int k = 200, double rel = 1e-6);

/// Scalar-output sequences over one shared base realization (A, X0).
/// A sequence is an explicit prefix s[0..N) followed by the tail s[t] = c A^(t-N) X0,
/// which keeps q, q*, pointwise scaling and sums exact without growing the base.
class SequenceSpace {
public:
    struct Seq {
        std::vector<Eigen::RowVectorXd> prefix;  // each 1×b
        Eigen::RowVectorXd c;                    // 1×dim
    };

    /// Base = block diagonal of the distinct (A, X0) pairs among `triples`.
    explicit SequenceSpace(const std::vector<Triple>& triples);

    int dim() const { return int(A_.rows()); }
    int bundle() const { return int(X0_.cols()); }

    /// One sequence per output row of triples[i], in order.
    const std::vector<Seq>& embedded(int i) const { return embedded_[i]; }

    Seq zero() const;
    Seq q(const Seq& s) const;
    Seq qstar(const Seq& s) const;
    Seq apply(const ShiftOp& x, const Seq& s) const;
    Seq scale_pointwise(const PartialSums& p, const Seq& s) const;
    Seq add(const Seq& a, const Seq& b) const;
    Seq scale(double c, const Seq& s) const;

    Eigen::RowVectorXd sample(const Seq& s, int k) const;
    Triple to_triple(const Seq& s) const;

private:
    Seq extend_prefix(const Seq& s, std::size_t n) const;
    const Eigen::MatrixXd& power_times_x0(int k) const;

    Eigen::MatrixXd A_, X0_;
    std::vector<std::vector<Seq>> embedded_;
    mutable std::vector<Eigen::MatrixXd> pow_;  // A^k X0
};

}  // namespace shiftchol
