#include "omfilter/control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "omfilter/errors.hpp"

namespace omf {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kRankTolerance = 1e-9;

double spectral_scale(const Eigen::Matrix3cd& A) {
    const double norm = A.jacobiSvd().singularValues()(0);
    return norm > 0.0 ? norm : 1.0;
}

int numerical_rank(const Eigen::Matrix3cd& m) {
    const Eigen::Vector3d sv = m.jacobiSvd().singularValues();
    if (sv(0) == 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < 3; ++i)
        if (sv(i) > kRankTolerance * sv(0)) ++rank;
    return rank;
}

Eigen::Matrix3cd controllability_matrix(const Eigen::Matrix3cd& A, const Eigen::Vector3cd& B) {
    Eigen::Matrix3cd c;
    c.col(0) = B;
    c.col(1) = A * B;
    c.col(2) = A * c.col(1);
    return c;
}

}  // namespace

int observability_rank(const Eigen::Matrix3cd& A, const Eigen::RowVector3cd& D) {
    const Eigen::Matrix3cd scaled = A / spectral_scale(A);
    Eigen::Matrix3cd o;
    o.row(0) = D;
    o.row(1) = D * scaled;
    o.row(2) = o.row(1) * scaled;
    return numerical_rank(o);
}

int controllability_rank(const Eigen::Matrix3cd& A, const Eigen::Vector3cd& B) {
    const Eigen::Matrix3cd scaled = A / spectral_scale(A);
    return numerical_rank(controllability_matrix(scaled, B));
}

PoleSet eigenvalues3(const Eigen::Matrix3cd& m) {
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(m, false);
    PoleSet out;
    for (int i = 0; i < 3; ++i) out[i] = solver.eigenvalues()(i);
    return out;
}

double max_real_part(const PoleSet& poles) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& p : poles) worst = std::max(worst, p.real());
    return worst;
}

double spectrum_mismatch(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double scale = 0.0;
    for (const auto& v : a) scale = std::max(scale, std::abs(v));
    for (const auto& v : b) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) scale = 1.0;

    std::vector<std::size_t> perm(b.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < a.size() && worst < best; ++i)
            worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best / scale;
}

Eigen::RowVector3cd place_poles(const Eigen::Matrix3cd& A, const Eigen::Vector3cd& B, const PoleSet& targets) {
    const double s = spectral_scale(A);
    const Eigen::Matrix3cd as = A / s;
    const Eigen::Matrix3cd ctrb = controllability_matrix(as, B);
    const int rank = numerical_rank(ctrb);
    if (rank < 3)
        throw DesignError("pole placement: (A, B) is not controllable, controllability rank " +
                          std::to_string(rank) + " < 3");

    Eigen::Matrix3cd phi = Eigen::Matrix3cd::Identity();
    for (const auto& t : targets) phi = phi * (as - (t / s) * Eigen::Matrix3cd::Identity());

    const Eigen::RowVector3cd e3 = Eigen::RowVector3cd::UnitZ();
    const Eigen::RowVector3cd row = ctrb.transpose().fullPivLu().solve(e3.transpose()).transpose();
    const Eigen::RowVector3cd K = s * (row * phi);

    const auto placed = eigenvalues3(A - B * K);
    const double mismatch = spectrum_mismatch({placed.begin(), placed.end()}, {targets.begin(), targets.end()});
    if (!(mismatch <= 1e-6))
        throw DesignError("pole placement: placed spectrum misses targets (relative error " +
                          std::to_string(mismatch) + ")");
    return K;
}

Eigen::Vector3cd observer_gains(const Eigen::Matrix3cd& A, const Eigen::RowVector3cd& D, const PoleSet& targets) {
    PoleSet conj_targets;
    for (int i = 0; i < 3; ++i) conj_targets[i] = std::conj(targets[i]);
    return place_poles(A.adjoint(), D.adjoint(), conj_targets).adjoint();
}

PoleSet default_pole_targets(const StateSpaceModel& model, double speed) {
    const auto eigs = eigenvalues3(model.a_matrix);
    double rate = 0.0;
    for (const auto& e : eigs) rate = std::max(rate, e.real());
    if (rate <= 0.0) {
        for (const auto& e : eigs) rate = std::max(rate, std::abs(e.real()));
        if (rate <= 0.0) rate = std::max(model.gamma_srm, 1.0);
    }
    const double r = 2.0 * rate * speed;
    return {cplx{-r, 0.0}, cplx{-r, r}, cplx{-r, -r}};
}

bool is_stabilizing(const StateSpaceModel& model, const ControllerDesign& design) {
    const auto& A = model.a_matrix;
    return max_real_part(eigenvalues3(A - model.input_b * design.K)) < 0.0 &&
           max_real_part(eigenvalues3(A - design.L * model.readout_d)) < 0.0;
}

ControllerDesign design_controller(const StateSpaceModel& model, const PoleSet& k_targets, const PoleSet& l_targets,
                                   double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ParameterError("control.epsilon", "must lie in (0, 1]");
    if (max_real_part(k_targets) >= 0.0 || max_real_part(l_targets) >= 0.0)
        throw DesignError("pole targets must all have negative real parts");
    ControllerDesign d;
    d.epsilon = epsilon;
    d.K = place_poles(model.a_matrix, model.input_b, k_targets);
    d.L = observer_gains(model.a_matrix, model.readout_d, l_targets);
    d.placed_poles_K = eigenvalues3(model.a_matrix - model.input_b * d.K);
    d.placed_poles_L = eigenvalues3(model.a_matrix - d.L * model.readout_d);
    if (!is_stabilizing(model, d)) throw DesignError("design is not stabilizing");
    return d;
}

ControllerDesign auto_design(const StateSpaceModel& model, double epsilon) {
    return design_controller(model, default_pole_targets(model), default_pole_targets(model, 1.5), epsilon);
}

ControllerDesign paper_gains(const StateSpaceModel& model, double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ParameterError("control.epsilon", "must lie in (0, 1]");
    ControllerDesign d;
    d.epsilon = epsilon;
    d.K << -kI, 1.0, -1.0;
    d.K *= 3e5 / epsilon;
    d.L << kI, 1.2, 1.0;
    d.L *= 5e5 / epsilon;
    d.placed_poles_K = eigenvalues3(model.a_matrix - model.input_b * d.K);
    d.placed_poles_L = eigenvalues3(model.a_matrix - d.L * model.readout_d);
    return d;
}

FrequencyResponse controller_tf(const Eigen::Matrix3cd& A, const Eigen::Vector3cd& B, const Eigen::RowVector3cd& D,
                                const Eigen::RowVector3cd& K, const Eigen::Vector3cd& L, const FrequencyGrid& grid) {
    FrequencyResponse out;
    out.omega = grid.omega();
    const Eigen::Matrix3cd base = -A + B * K + L * D;
    for (double w : grid.omega()) {
        const Eigen::Matrix3cd resolvent = -kI * w * Eigen::Matrix3cd::Identity() + base;
        Eigen::PartialPivLU<Eigen::Matrix3cd> lu(resolvent);
        if (!(lu.rcond() > 1e-14)) throw SingularPointError(w, "controller resolvent is singular");
        out.values.push_back(-(K * lu.solve(L))(0, 0));
    }
    return out;
}

std::array<cplx, 6> closed_loop_eigs(const Eigen::Matrix3cd& A, const Eigen::Vector3cd& B,
                                     const Eigen::RowVector3cd& D, const Eigen::RowVector3cd& K,
                                     const Eigen::Vector3cd& L) {
    Eigen::Matrix<cplx, 6, 6> m;
    m.topLeftCorner<3, 3>() = A;
    m.topRightCorner<3, 3>() = -B * K;
    m.bottomLeftCorner<3, 3>() = L * D;
    m.bottomRightCorner<3, 3>() = A - B * K - L * D;
    Eigen::ComplexEigenSolver<Eigen::Matrix<cplx, 6, 6>> solver(m, false);
    std::array<cplx, 6> out;
    for (int i = 0; i < 6; ++i) out[i] = solver.eigenvalues()(i);
    return out;
}

StableParameter StableParameter::constant(cplx value) {
    StableParameter q;
    q.a.resize(0, 0);
    q.b.resize(0);
    q.c.resize(0);
    q.d = value;
    return q;
}

StableParameter StableParameter::first_order(cplx gain, double pole_rate) {
    if (!(pole_rate > 0.0)) throw ParameterError("pole_rate", "must be positive for a stable parameter");
    StableParameter q;
    q.a = Eigen::MatrixXcd::Constant(1, 1, cplx{-pole_rate, 0.0});
    q.b = Eigen::VectorXcd::Constant(1, cplx{pole_rate, 0.0});
    q.c = Eigen::RowVectorXcd::Constant(1, gain);
    q.d = 0.0;
    return q;
}

cplx StableParameter::evaluate(double omega) const {
    if (a.rows() == 0) return d;
    const Eigen::MatrixXcd resolvent =
        -kI * omega * Eigen::MatrixXcd::Identity(a.rows(), a.cols()) - a;
    return d + (c * resolvent.partialPivLu().solve(b))(0, 0);
}

FrequencyResponse StableParameter::sample(const FrequencyGrid& grid) const {
    FrequencyResponse out;
    out.omega = grid.omega();
    for (double w : grid.omega()) out.values.push_back(evaluate(w));
    return out;
}

FrequencyResponse youla_controller(const StateSpaceModel& model, const ControllerDesign& design,
                                   const FrequencyResponse& q) {
    if (q.omega.size() != q.values.size()) throw ParameterError("Q", "omega and values differ in length");
    for (const auto& v : q.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ParameterError("Q", "Youla parameter must be bounded on the grid");

    const auto& A = model.a_matrix;
    const auto& B = model.input_b;
    const auto& D = model.readout_d;
    const Eigen::Matrix3cd a_k = A - B * design.K - design.L * D;

    FrequencyResponse out;
    out.omega = q.omega;
    for (std::size_t i = 0; i < q.omega.size(); ++i) {
        const double w = q.omega[i];
        const Eigen::Matrix3cd resolvent = -kI * w * Eigen::Matrix3cd::Identity() - a_k;
        Eigen::PartialPivLU<Eigen::Matrix3cd> lu(resolvent);
        if (!(lu.rcond() > 1e-14)) throw SingularPointError(w, "Youla central-controller resolvent is singular");
        const Eigen::Vector3cd rl = lu.solve(design.L);
        const Eigen::Vector3cd rb = lu.solve(B);
        const cplx j11 = -(design.K * rl)(0, 0);
        const cplx j12 = 1.0 - (design.K * rb)(0, 0);
        const cplx j21 = 1.0 - (D * rl)(0, 0);
        const cplx j22 = -(D * rb)(0, 0);
        const cplx qv = q.values[i];
        out.values.push_back(j11 + j12 * qv * j21 / (1.0 - j22 * qv));
    }
    return out;
}

namespace {

// Controller realization with states (xhat, xq), input y, output u:
//   u = -K xhat + Cq xq + Dq (y - D xhat)
//   xhat' = A xhat + B u + L (y - D xhat)
//   xq' = Aq xq + Bq (y - D xhat)
struct ControllerRealization {
    Eigen::MatrixXcd a, b, c, d;
};

ControllerRealization realize_youla(const StateSpaceModel& model, const ControllerDesign& design,
                                    const StableParameter& q) {
    const auto& A = model.a_matrix;
    const auto& B = model.input_b;
    const auto& D = model.readout_d;
    const Eigen::Index nq = q.a.rows();
    const Eigen::Index n = 3 + nq;

    Eigen::MatrixXcd u_state(1, n);  // u = u_state * [xhat; xq] + u_in * y
    u_state.leftCols(3) = -design.K - q.d * D;
    if (nq > 0) u_state.rightCols(nq) = q.c;
    const cplx u_in = q.d;

    ControllerRealization r;
    r.a = Eigen::MatrixXcd::Zero(n, n);
    r.b = Eigen::MatrixXcd::Zero(n, 1);
    r.a.topLeftCorner(3, 3) = A - design.L * D;
    r.a.topRows(3) += B * u_state;
    r.b.topRows(3) = B * u_in + design.L;
    if (nq > 0) {
        r.a.bottomLeftCorner(nq, 3) = -q.b * D;
        r.a.bottomRightCorner(nq, nq) = q.a;
        r.b.bottomRows(nq) = q.b;
    }
    r.c = u_state;
    r.d = Eigen::MatrixXcd::Constant(1, 1, u_in);
    return r;
}

}  // namespace

std::vector<cplx> youla_closed_loop_eigs(const StateSpaceModel& model, const ControllerDesign& design,
                                         const StableParameter& q) {
    const auto r = realize_youla(model, design, q);
    const Eigen::Index nc = r.a.rows();
    const auto& A = model.a_matrix;
    const auto& B = model.input_b;
    const auto& D = model.readout_d;

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3 + nc, 3 + nc);
    m.topLeftCorner(3, 3) = A + B * r.d * D;
    m.topRightCorner(3, nc) = B * r.c;
    m.bottomLeftCorner(nc, 3) = r.b * D;
    m.bottomRightCorner(nc, nc) = r.a;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    return {solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size()};
}

FrequencyResponse youla_realized_response(const StateSpaceModel& model, const ControllerDesign& design,
                                          const StableParameter& q, const FrequencyGrid& grid) {
    const auto r = realize_youla(model, design, q);
    FrequencyResponse out;
    out.omega = grid.omega();
    const Eigen::Index n = r.a.rows();
    for (double w : grid.omega()) {
        const Eigen::MatrixXcd resolvent = -kI * w * Eigen::MatrixXcd::Identity(n, n) - r.a;
        out.values.push_back((r.d + r.c * resolvent.partialPivLu().solve(r.b))(0, 0));
    }
    return out;
}

double snr_invariance(const StateSpaceModel& model, const ControllerDesign& design, const FrequencyGrid& grid) {
    const auto& A = model.a_matrix;
    const auto& B = model.input_b;
    const auto& D = model.readout_d;
    const double port = std::sqrt(2.0 * model.gamma_srm);
    const auto open = transfer_functions(model, grid);
    const auto controller = controller_tf(A, B, D, design.K, design.L, grid);

    // Exogenous inputs: h, d_in, b_th^dagger. The controller sees z = -d_out / sqrt(2 gamma_SRM)
    // = D x - d_in / sqrt(2 gamma_SRM).
    Eigen::Matrix3cd inputs;
    inputs.col(0) = model.signal_map;
    inputs.col(1) = model.noise_din;
    inputs.col(2) = model.noise_bth;
    const Eigen::RowVector3cd z_feedthrough(0.0, -1.0 / port, 0.0);
    const Eigen::RowVector3cd direct(0.0, 1.0, 0.0);  // d_in reaches d_out directly

    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = grid.omega()[i];
        const cplx c = controller.values[i];
        const Eigen::Matrix3cd loop = -kI * w * Eigen::Matrix3cd::Identity() - A - c * B * D;
        const Eigen::Matrix3cd drive = inputs + c * B * z_feedthrough;
        const Eigen::Matrix3cd x = loop.partialPivLu().solve(drive);
        const Eigen::RowVector3cd out = direct - port * x.row(2);

        const double closed = std::sqrt(std::norm(out(1)) + std::norm(out(2))) / std::abs(out(0));
        const double open_ratio =
            std::sqrt(std::norm(open.shot_tf[i]) + std::norm(open.thermal_tf[i])) / std::abs(open.signal_tf[i]);
        worst = std::max(worst, std::abs(closed / open_ratio - 1.0));
    }
    return worst;
}

}  // namespace omf
