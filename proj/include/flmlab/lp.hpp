#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace flmlab::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    Eigen::VectorXd x;
    double objective = 0.0;
};

// Dense two-phase simplex for  min c'x  s.t.  A x = b, x >= 0.
// Bland's rule throughout; problems here are tiny (rows <= ~20) but heavily
// degenerate, so cycling protection matters more than speed.
Result minimize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c);

// Is `target` a convex combination of the rows of `pts`? Rows flagged in
// `skip` (optional, same length as rows) are excluded.
bool in_convex_hull(const Eigen::MatrixXd& pts, const Eigen::VectorXd& target,
                    const std::vector<bool>* skip = nullptr);

// Does 0 lie in the interior of conv(rows)?
bool origin_in_interior(const Eigen::MatrixXd& pts);

} // namespace flmlab::lp
