#ifndef CHEBCERT_SDP_HPP
#define CHEBCERT_SDP_HPP

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

namespace chebcert {

// Standard primal form, per PSD block plus optional free scalar variables:
//   min  sum_b <C_b, X_b> + c_free . v
//   s.t. sum_b <A_{j,b}, X_b> + a_{j,free} . v = b_j   (j = 1..m)
//        X_b >= 0 (PSD), v free.
//
// Matrices are stored as sparse symmetric entry lists: an entry (r, c, v)
// with r != c stands for both (r,c) and (c,r).
struct MatrixEntry {
    int block;
    int row;
    int col;
    double value;
};

struct SdpConstraint {
    std::vector<MatrixEntry> entries;
    std::vector<std::pair<int, double>> free_entries;  // (free var index, coeff)
    double rhs = 0.0;
};

class SdpProblem {
public:
    int add_block(std::string label, int dim);
    int add_free_variable(double cost);

    void add_objective_entry(int block, int row, int col, double value);
    int add_constraint(SdpConstraint c);

    int num_blocks() const { return static_cast<int>(block_dims_.size()); }
    int block_dim(int b) const { return block_dims_[b]; }
    const std::string& block_label(int b) const { return block_labels_[b]; }
    int num_free() const { return static_cast<int>(free_costs_.size()); }
    int num_constraints() const { return static_cast<int>(constraints_.size()); }
    const std::vector<SdpConstraint>& constraints() const { return constraints_; }
    const std::vector<MatrixEntry>& objective_entries() const { return objective_; }
    const std::vector<double>& free_costs() const { return free_costs_; }

    // Sparse text dump (block sizes, then entries as (j, block, row, col,
    // value); j = 0 is the objective, block = -1 addresses free variables).
    std::string export_text() const;

private:
    std::vector<std::string> block_labels_;
    std::vector<int> block_dims_;
    std::vector<MatrixEntry> objective_;
    std::vector<double> free_costs_;
    std::vector<SdpConstraint> constraints_;
};

enum class SolveStatus { Optimal, Infeasible, MaxIterations, NumericalFailure };

struct SolveOptions {
    double tolerance = 1e-8;       // primal/dual feasibility (relative)
    double gap_tolerance = 1e-7;   // relative duality gap
    int max_iterations = 200;
    double step_fraction = 0.98;   // fraction to boundary
};

struct SolveReport {
    SolveStatus status = SolveStatus::NumericalFailure;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    std::vector<Eigen::MatrixXd> X;  // per block
    std::vector<Eigen::MatrixXd> S;
    Eigen::VectorXd y;
    Eigen::VectorXd free_values;
    double primal_residual = 0.0;  // relative
    double dual_residual = 0.0;
    double relative_gap = 0.0;
    int iterations = 0;
    // (primal objective, dual objective, max relative residual) per iterate
    std::vector<std::array<double, 3>> trace;
};

SolveReport solve(const SdpProblem& problem, const SolveOptions& options = {});

struct ResidualCheck {
    double primal_residual;
    double dual_residual;
    double relative_gap;
};

// Recomputes the report's residuals directly from the problem data.
ResidualCheck check_solution(const SdpProblem& problem, const SolveReport& report);

const char* to_string(SolveStatus s);

}  // namespace chebcert

#endif
