#include "shiftchol/sequence.hpp"

#include <algorithm>

namespace shiftchol {

Triple Triple::zero(int p, int b) {
    return {Eigen::MatrixXd::Zero(p, 0), Eigen::MatrixXd::Zero(0, 0), Eigen::MatrixXd::Zero(0, b)};
}

Triple Triple::geometric(const Eigen::MatrixXd& C, double r, const Eigen::MatrixXd& X0) {
    if (C.cols() != X0.rows()) throw Error(ErrorKind::DimensionMismatch, "geometric triple: C and x0 disagree");
    return {C, r * Eigen::MatrixXd::Identity(X0.rows(), X0.rows()), X0};
}

Triple Triple::finite(const std::vector<Eigen::MatrixXd>& values) {
    if (values.empty()) throw Error(ErrorKind::PreconditionViolated, "finite triple needs at least one sample");
    const int N = int(values.size()), p = int(values[0].rows()), b = int(values[0].cols());
    Triple T{Eigen::MatrixXd::Zero(p, N * p), Eigen::MatrixXd::Zero(N * p, N * p), Eigen::MatrixXd(N * p, b)};
    T.C.leftCols(p).setIdentity();
    for (int k = 0; k < N; ++k) {
        if (values[k].rows() != p || values[k].cols() != b)
            throw Error(ErrorKind::DimensionMismatch, "finite triple: sample shapes differ");
        T.X0.middleRows(k * p, p) = values[k];
        if (k + 1 < N) T.A.block(k * p, (k + 1) * p, p, p).setIdentity();
    }
    return T;
}

Eigen::MatrixXd sample(const Triple& T, int k) {
    Eigen::MatrixXd x = T.X0;
    for (int i = 0; i < k; ++i) x = T.A * x;
    return T.C * x;
}

Eigen::MatrixXd first(const Triple& T) { return T.C * T.X0; }

std::vector<Eigen::MatrixXd> samples(const Triple& T, int n) {
    std::vector<Eigen::MatrixXd> out;
    out.reserve(n);
    Eigen::MatrixXd x = T.X0;
    for (int i = 0; i < n; ++i) {
        out.push_back(T.C * x);
        x = T.A * x;
    }
    return out;
}

Triple apply_q(const Triple& T) { return {T.C * T.A, T.A, T.X0}; }

Triple apply_qstar(const Triple& T) {
    const int m = T.state_dim();
    Triple R{Eigen::MatrixXd::Zero(T.outputs(), 2 * m), Eigen::MatrixXd::Zero(2 * m, 2 * m),
             Eigen::MatrixXd::Zero(2 * m, T.bundle())};
    R.A.topLeftCorner(m, m) = T.A;
    R.A.bottomLeftCorner(m, m).setIdentity();
    R.X0.topRows(m) = T.X0;
    R.C.rightCols(m) = T.C;
    return R;
}

Triple add(const Triple& T1, const Triple& T2) {
    if (T1.outputs() != T2.outputs() || T1.bundle() != T2.bundle())
        throw Error(ErrorKind::DimensionMismatch, "adding triples of different output or bundle size");
    if (T1.A.rows() == T2.A.rows() && T1.A == T2.A && T1.X0 == T2.X0) return {T1.C + T2.C, T1.A, T1.X0};
    const int m1 = T1.state_dim(), m2 = T2.state_dim();
    Triple R{Eigen::MatrixXd(T1.outputs(), m1 + m2), Eigen::MatrixXd::Zero(m1 + m2, m1 + m2),
             Eigen::MatrixXd(m1 + m2, T1.bundle())};
    R.C << T1.C, T2.C;
    R.A.topLeftCorner(m1, m1) = T1.A;
    R.A.bottomRightCorner(m2, m2) = T2.A;
    R.X0 << T1.X0, T2.X0;
    return R;
}

Triple scale(double c, const Triple& T) { return {c * T.C, T.A, T.X0}; }

Triple select_output(const Triple& T, int i) { return {T.C.row(i), T.A, T.X0}; }

Triple apply_shiftop(const ShiftOp& x, const Triple& T) {
    Triple out = Triple::zero(T.outputs(), T.bundle());
    for (const auto& [m, c] : x.terms()) {
        Triple t = T;
        for (int k = 0; k < m.j; ++k) t = apply_q(t);
        for (int k = 0; k < m.istar; ++k) t = apply_qstar(t);
        out = add(out, scale(c, t));
    }
    return out;
}

Triple scale_pointwise(const PartialSums& p, const Triple& T) {
    Triple base = scale(p.sigma_inf, T);
    if (p.sigma.empty()) return base;
    std::vector<Eigen::MatrixXd> s = samples(T, int(p.sigma.size()));
    for (std::size_t t = 0; t < s.size(); ++t) s[t] *= p.sigma[t] - p.sigma_inf;
    return add(base, Triple::finite(s));
}

bool decays(const Triple& T, int k, double rel) {
    double early = 0.0;
    for (const auto& s : samples(T, 5)) early = std::max(early, s.cwiseAbs().maxCoeff());
    return sample(T, k).cwiseAbs().maxCoeff() <= rel * std::max(early, 1e-300);
}

SequenceSpace::SequenceSpace(const std::vector<Triple>& triples) {
    int b = triples.empty() ? 0 : triples[0].bundle();
    struct Block {
        const Triple* t;
        int offset;
    };
    std::vector<Block> blocks;
    int dim = 0;
    std::vector<int> offset_of(triples.size());
    for (std::size_t i = 0; i < triples.size(); ++i) {
        const Triple& t = triples[i];
        if (t.bundle() != b) throw Error(ErrorKind::DimensionMismatch, "triples carry different bundle sizes");
        auto same = std::find_if(blocks.begin(), blocks.end(), [&](const Block& bl) {
            return bl.t->A.rows() == t.A.rows() && bl.t->A == t.A && bl.t->X0 == t.X0;
        });
        if (same != blocks.end()) {
            offset_of[i] = same->offset;
        } else {
            blocks.push_back({&t, dim});
            offset_of[i] = dim;
            dim += t.state_dim();
        }
    }
    A_ = Eigen::MatrixXd::Zero(dim, dim);
    X0_ = Eigen::MatrixXd::Zero(dim, b);
    for (const Block& bl : blocks) {
        const int m = bl.t->state_dim();
        A_.block(bl.offset, bl.offset, m, m) = bl.t->A;
        X0_.middleRows(bl.offset, m) = bl.t->X0;
    }
    embedded_.resize(triples.size());
    for (std::size_t i = 0; i < triples.size(); ++i)
        for (int r = 0; r < triples[i].outputs(); ++r) {
            Seq s = zero();
            s.c.segment(offset_of[i], triples[i].state_dim()) = triples[i].C.row(r);
            embedded_[i].push_back(std::move(s));
        }
    pow_.push_back(X0_);
}

const Eigen::MatrixXd& SequenceSpace::power_times_x0(int k) const {
    while (int(pow_.size()) <= k) pow_.push_back(A_ * pow_.back());
    return pow_[k];
}

SequenceSpace::Seq SequenceSpace::zero() const { return {{}, Eigen::RowVectorXd::Zero(dim())}; }

SequenceSpace::Seq SequenceSpace::q(const Seq& s) const {
    Seq r = s;
    if (!r.prefix.empty()) r.prefix.erase(r.prefix.begin());
    else r.c = s.c * A_;
    return r;
}

SequenceSpace::Seq SequenceSpace::qstar(const Seq& s) const {
    Seq r = s;
    r.prefix.insert(r.prefix.begin(), Eigen::RowVectorXd::Zero(bundle()));
    return r;
}

SequenceSpace::Seq SequenceSpace::extend_prefix(const Seq& s, std::size_t n) const {
    Seq r = s;
    while (r.prefix.size() < n) {
        r.prefix.push_back(r.c * X0_);
        r.c = r.c * A_;
    }
    return r;
}

SequenceSpace::Seq SequenceSpace::add(const Seq& a, const Seq& b) const {
    const std::size_t n = std::max(a.prefix.size(), b.prefix.size());
    Seq r = extend_prefix(a, n);
    Seq t = extend_prefix(b, n);
    for (std::size_t k = 0; k < n; ++k) r.prefix[k] += t.prefix[k];
    r.c += t.c;
    return r;
}

SequenceSpace::Seq SequenceSpace::scale(double c, const Seq& s) const {
    Seq r = s;
    for (auto& v : r.prefix) v *= c;
    r.c *= c;
    return r;
}

SequenceSpace::Seq SequenceSpace::scale_pointwise(const PartialSums& p, const Seq& s) const {
    Seq r = extend_prefix(s, p.sigma.size());
    for (std::size_t t = 0; t < r.prefix.size(); ++t) r.prefix[t] *= p.at(t);
    r.c *= p.sigma_inf;
    return r;
}

SequenceSpace::Seq SequenceSpace::apply(const ShiftOp& x, const Seq& s) const {
    Seq out = zero();
    std::vector<Seq> forward{s};  // q^j s
    for (const auto& [m, c] : x.terms()) {
        while (int(forward.size()) <= m.j) forward.push_back(q(forward.back()));
        Seq t = forward[m.j];
        for (int k = 0; k < m.istar; ++k) t = qstar(t);
        out = add(out, scale(c, t));
    }
    return out;
}

Eigen::RowVectorXd SequenceSpace::sample(const Seq& s, int k) const {
    const int N = int(s.prefix.size());
    if (k < N) return s.prefix[k];
    return s.c * power_times_x0(k - N);
}

Triple SequenceSpace::to_triple(const Seq& s) const {
    const int N = int(s.prefix.size()), m = dim();
    if (N == 0) return {s.c, A_, X0_};
    // shift register r_0..r_{N-1} emitting the prefix, fed by the tail output c x
    Triple T{Eigen::MatrixXd::Zero(1, N + m), Eigen::MatrixXd::Zero(N + m, N + m), Eigen::MatrixXd(N + m, bundle())};
    T.C(0, 0) = 1.0;
    for (int k = 0; k + 1 < N; ++k) T.A(k, k + 1) = 1.0;
    T.A.block(N - 1, N, 1, m) = s.c;
    T.A.bottomRightCorner(m, m) = A_;
    for (int k = 0; k < N; ++k) T.X0.row(k) = s.prefix[k];
    T.X0.bottomRows(m) = X0_;
    return T;
}

}  // namespace shiftchol
