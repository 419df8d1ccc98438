#include "flmlab/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace flmlab::lp {

namespace {

constexpr double kPivotTol = 1e-11;

struct Tableau {
    // rows 0..m-1 constraints, row m objective; last column is rhs.
    Eigen::MatrixXd t;
    std::vector<int> basis;
    int m = 0;
    int ncols = 0;

    double& rhs(int r) { return t(r, ncols); }

    void pivot(int row, int col) {
        t.row(row) /= t(row, col);
        for (int r = 0; r <= m; ++r) {
            if (r == row) continue;
            const double f = t(r, col);
            if (f != 0.0) t.row(r) -= f * t.row(row);
        }
        basis[static_cast<std::size_t>(row)] = col;
    }

    // Bland's rule. Columns >= allowed_cols never enter.
    // Returns false on unbounded.
    bool run(int allowed_cols, double tol) {
        for (int iter = 0; iter < 100000; ++iter) {
            int enter = -1;
            for (int j = 0; j < allowed_cols; ++j) {
                if (t(m, j) < -tol) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int r = 0; r < m; ++r) {
                const double a = t(r, enter);
                if (a > kPivotTol) {
                    const double ratio = t(r, ncols) / a;
                    if (ratio < best - 1e-14 ||
                        (std::abs(ratio - best) <= 1e-14 && leave >= 0 &&
                         basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
                        best = ratio;
                        leave = r;
                    }
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
        return true;
    }
};

} // namespace

Result minimize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    Tableau tab;
    tab.m = m;
    tab.ncols = n + m;
    tab.t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
    tab.basis.resize(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) {
        const double sign = b(r) < 0 ? -1.0 : 1.0;
        tab.t.row(r).head(n) = sign * A.row(r);
        tab.t(r, n + r) = 1.0;
        tab.t(r, n + m) = sign * b(r);
        tab.basis[static_cast<std::size_t>(r)] = n + r;
    }
    // Phase 1 objective: sum of artificials, expressed in non-basic terms.
    for (int r = 0; r < m; ++r) tab.t.row(m) -= tab.t.row(r);
    for (int r = 0; r < m; ++r) tab.t(m, n + r) = 0.0;

    const double scale = 1.0 + b.cwiseAbs().maxCoeff() + (A.size() ? A.cwiseAbs().maxCoeff() : 0.0);
    const double tol = 1e-12 * scale;
    tab.run(n + m, tol);

    Result res;
    if (-tab.t(m, n + m) > 1e-9 * scale) {
        res.status = Status::Infeasible;
        return res;
    }
    // Drive zero-valued artificials out of the basis where possible.
    for (int r = 0; r < m; ++r) {
        if (tab.basis[static_cast<std::size_t>(r)] < n) continue;
        for (int j = 0; j < n; ++j) {
            if (std::abs(tab.t(r, j)) > 1e-9) {
                tab.pivot(r, j);
                break;
            }
        }
    }

    // Phase 2.
    tab.t.row(m).setZero();
    tab.t.row(m).head(n) = c.transpose();
    for (int r = 0; r < m; ++r) {
        const int bcol = tab.basis[static_cast<std::size_t>(r)];
        if (bcol < n && c(bcol) != 0.0) tab.t.row(m) -= c(bcol) * tab.t.row(r);
    }
    if (!tab.run(n, tol)) {
        res.status = Status::Unbounded;
        return res;
    }
    res.status = Status::Optimal;
    res.x = Eigen::VectorXd::Zero(n);
    for (int r = 0; r < m; ++r) {
        const int bcol = tab.basis[static_cast<std::size_t>(r)];
        if (bcol < n) res.x(bcol) = tab.t(r, n + m);
    }
    res.objective = c.dot(res.x);
    return res;
}

bool in_convex_hull(const Eigen::MatrixXd& pts, const Eigen::VectorXd& target,
                    const std::vector<bool>* skip) {
    const Eigen::Index d = pts.cols();
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
        if (skip && (*skip)[static_cast<std::size_t>(i)]) continue;
        cols.push_back(i);
    }
    if (cols.empty()) return false;
    const auto k = static_cast<Eigen::Index>(cols.size());
    Eigen::MatrixXd A(d + 1, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        A.col(j).head(d) = pts.row(cols[static_cast<std::size_t>(j)]).transpose();
        A(d, j) = 1.0;
    }
    Eigen::VectorXd b(d + 1);
    b.head(d) = target;
    b(d) = 1.0;
    const Eigen::VectorXd c = Eigen::VectorXd::Zero(k);
    return minimize(A, b, c).status != Status::Infeasible;
}

bool origin_in_interior(const Eigen::MatrixXd& pts) {
    const Eigen::Index d = pts.cols();
    const Eigen::Index m = pts.rows();
    if (m < d + 1) return false;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(pts);
    lu.setThreshold(1e-10);
    if (lu.rank() < d) return false;
    // lambda_j = mu_j + t with mu >= 0; maximise t subject to
    // sum lambda_j v_j = 0, sum lambda_j = 1.
    Eigen::MatrixXd A(d + 1, m + 1);
    A.topLeftCorner(d, m) = pts.transpose();
    A.block(0, m, d, 1) = pts.colwise().sum().transpose();
    A.row(d).head(m).setOnes();
    A(d, m) = static_cast<double>(m);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(d + 1);
    b(d) = 1.0;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(m + 1);
    c(m) = -1.0;
    const Result r = minimize(A, b, c);
    if (r.status != Status::Optimal) return false;
    return r.x(m) > 1e-10 / static_cast<double>(m);
}

} // namespace flmlab::lp
