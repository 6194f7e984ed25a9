#include "chebcert/sdp.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace chebcert {

int SdpProblem::add_block(std::string label, int dim) {
    if (dim < 1) throw std::invalid_argument("block dimension must be >= 1");
    block_labels_.push_back(std::move(label));
    block_dims_.push_back(dim);
    return static_cast<int>(block_dims_.size()) - 1;
}

int SdpProblem::add_free_variable(double cost) {
    free_costs_.push_back(cost);
    return static_cast<int>(free_costs_.size()) - 1;
}

void SdpProblem::add_objective_entry(int block, int row, int col, double value) {
    objective_.push_back({block, row, col, value});
}

int SdpProblem::add_constraint(SdpConstraint c) {
    constraints_.push_back(std::move(c));
    return static_cast<int>(constraints_.size()) - 1;
}

std::string SdpProblem::export_text() const {
    std::ostringstream out;
    char buf[64];
    out << "blocks " << num_blocks() << "\n";
    for (int b = 0; b < num_blocks(); ++b) out << block_dims_[b] << (b + 1 < num_blocks() ? " " : "\n");
    if (num_blocks() == 0) out << "\n";
    out << "free " << num_free() << "\n";
    out << "constraints " << num_constraints() << "\n";
    for (int j = 0; j < num_constraints(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", constraints_[j].rhs);
        out << "rhs " << (j + 1) << " " << buf << "\n";
    }
    auto emit = [&](int j, const std::vector<MatrixEntry>& es,
                    const std::vector<std::pair<int, double>>& fs) {
        for (const auto& e : es) {
            std::snprintf(buf, sizeof buf, "%.17g", e.value);
            out << j << " " << (e.block + 1) << " " << (e.row + 1) << " " << (e.col + 1)
                << " " << buf << "\n";
        }
        for (const auto& [idx, v] : fs) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << j << " -1 " << (idx + 1) << " " << (idx + 1) << " " << buf << "\n";
        }
    };
    std::vector<std::pair<int, double>> obj_free;
    for (int i = 0; i < num_free(); ++i)
        if (free_costs_[i] != 0.0) obj_free.emplace_back(i, free_costs_[i]);
    emit(0, objective_, obj_free);
    for (int j = 0; j < num_constraints(); ++j)
        emit(j + 1, constraints_[j].entries, constraints_[j].free_entries);
    return out.str();
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::Infeasible: return "Infeasible";
        case SolveStatus::MaxIterations: return "MaxIterations";
        case SolveStatus::NumericalFailure: return "NumericalFailure";
    }
    return "?";
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd entries_to_dense(const std::vector<MatrixEntry>& es, int block, int dim) {
    MatrixXd A = MatrixXd::Zero(dim, dim);
    for (const auto& e : es) {
        if (e.block != block) continue;
        A(e.row, e.col) = e.value;
        A(e.col, e.row) = e.value;
    }
    return A;
}

// <A, X> with the symmetric sparse-entry convention.
double sparse_inner(const std::vector<MatrixEntry>& es, const std::vector<MatrixXd>& X) {
    double s = 0.0;
    for (const auto& e : es) {
        const double x = X[e.block](e.row, e.col);
        s += (e.row == e.col) ? e.value * x : 2.0 * e.value * x;
    }
    return s;
}

// Largest alpha with M + alpha*D staying PSD, given the Cholesky factor of M.
double max_step(const Eigen::LLT<MatrixXd>& llt, const MatrixXd& D) {
    const MatrixXd L = llt.matrixL();
    const MatrixXd W =
        L.triangularView<Eigen::Lower>().solve(
            L.triangularView<Eigen::Lower>().solve(D).transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (W + W.transpose()),
                                               Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
    return -1.0 / lmin;
}

struct Workspace {
    std::vector<std::map<int, MatrixXd>> A_dense;  // per constraint: block -> dense
    std::vector<std::vector<int>> A_blocks;        // blocks touched per constraint
    MatrixXd F;                                    // m x nfree
    VectorXd b, c_free;
    std::vector<MatrixXd> C;  // per block dense
};

Workspace build_workspace(const SdpProblem& p) {
    Workspace w;
    const int m = p.num_constraints();
    const int nb = p.num_blocks();
    w.A_dense.resize(m);
    w.A_blocks.resize(m);
    w.b.resize(m);
    for (int j = 0; j < m; ++j) {
        const auto& c = p.constraints()[j];
        w.b(j) = c.rhs;
        for (const auto& e : c.entries) {
            auto [it, inserted] =
                w.A_dense[j].try_emplace(e.block, MatrixXd::Zero(p.block_dim(e.block),
                                                                 p.block_dim(e.block)));
            it->second(e.row, e.col) = e.value;
            it->second(e.col, e.row) = e.value;
            if (inserted) w.A_blocks[j].push_back(e.block);
        }
    }
    w.F = MatrixXd::Zero(m, p.num_free());
    for (int j = 0; j < m; ++j)
        for (const auto& [idx, v] : p.constraints()[j].free_entries) w.F(j, idx) = v;
    w.c_free = VectorXd::Zero(p.num_free());
    for (int i = 0; i < p.num_free(); ++i) w.c_free(i) = p.free_costs()[i];
    w.C.resize(nb);
    for (int b = 0; b < nb; ++b) w.C[b] = entries_to_dense(p.objective_entries(), b, p.block_dim(b));
    return w;
}

}  // namespace

SolveReport solve(const SdpProblem& p, const SolveOptions& opt) {
    const int m = p.num_constraints();
    const int nb = p.num_blocks();
    const int nf = p.num_free();
    if (m == 0) throw std::invalid_argument("solve: constraint list is empty");

    const Workspace w = build_workspace(p);

    int total_dim = 0;
    for (int b = 0; b < nb; ++b) total_dim += p.block_dim(b);

    double data_scale = 1.0;
    for (int j = 0; j < m; ++j) data_scale = std::max(data_scale, std::abs(w.b(j)));
    double cost_scale = 1.0;
    for (int b = 0; b < nb; ++b)
        cost_scale = std::max(cost_scale, w.C[b].cwiseAbs().maxCoeff());
    if (nf > 0 && w.c_free.size() > 0)
        cost_scale = std::max(cost_scale, w.c_free.cwiseAbs().maxCoeff());

    SolveReport rep;
    rep.X.resize(nb);
    rep.S.resize(nb);
    for (int b = 0; b < nb; ++b) {
        rep.X[b] = 10.0 * data_scale * MatrixXd::Identity(p.block_dim(b), p.block_dim(b));
        rep.S[b] = 10.0 * cost_scale * MatrixXd::Identity(p.block_dim(b), p.block_dim(b));
    }
    rep.y = VectorXd::Zero(m);
    rep.free_values = VectorXd::Zero(nf);

    const double bnorm = 1.0 + w.b.cwiseAbs().maxCoeff();
    double cnorm = 1.0;
    for (int b = 0; b < nb; ++b) cnorm = std::max(cnorm, 1.0 + w.C[b].cwiseAbs().maxCoeff());
    if (nf > 0 && w.c_free.size() > 0)
        cnorm = std::max(cnorm, 1.0 + w.c_free.cwiseAbs().maxCoeff());

    auto primal_obj = [&]() {
        double v = 0.0;
        for (int b = 0; b < nb; ++b) v += (w.C[b].cwiseProduct(rep.X[b])).sum();
        if (nf > 0) v += w.c_free.dot(rep.free_values);
        return v;
    };
    auto dual_obj = [&]() { return w.b.dot(rep.y); };

    for (int iter = 0; iter < opt.max_iterations; ++iter) {
        rep.iterations = iter + 1;

        // Residuals.
        VectorXd rp = w.b;
        for (int j = 0; j < m; ++j) {
            for (int b : w.A_blocks[j]) rp(j) -= (w.A_dense[j].at(b).cwiseProduct(rep.X[b])).sum();
            if (nf > 0) rp(j) -= w.F.row(j).dot(rep.free_values);
        }
        std::vector<MatrixXd> Rd(nb);
        for (int b = 0; b < nb; ++b) Rd[b] = w.C[b] - rep.S[b];
        for (int j = 0; j < m; ++j)
            for (int b : w.A_blocks[j]) Rd[b] -= rep.y(j) * w.A_dense[j].at(b);
        VectorXd rf = nf > 0 ? VectorXd(w.c_free - w.F.transpose() * rep.y) : VectorXd();

        double pinf = rp.cwiseAbs().maxCoeff() / bnorm;
        double dinf = 0.0;
        for (int b = 0; b < nb; ++b) dinf = std::max(dinf, Rd[b].cwiseAbs().maxCoeff() / cnorm);
        if (nf > 0 && rf.size() > 0) dinf = std::max(dinf, rf.cwiseAbs().maxCoeff() / cnorm);

        const double pobj = primal_obj();
        const double dobj = dual_obj();
        const double rel_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
        rep.primal_objective = pobj;
        rep.dual_objective = dobj;
        rep.primal_residual = pinf;
        rep.dual_residual = dinf;
        rep.relative_gap = rel_gap;
        rep.trace.push_back({pobj, dobj, std::max(pinf, dinf)});

        if (pinf <= opt.tolerance && dinf <= opt.tolerance && rel_gap <= opt.gap_tolerance) {
            rep.status = SolveStatus::Optimal;
            return rep;
        }
        if (std::abs(dobj) > 1e10 * bnorm && pinf > 1e-6) {
            rep.status = SolveStatus::Infeasible;
            return rep;
        }

        // A late-stage factorization breakdown still leaves a usable iterate.
        auto near_done = [&]() {
            return pinf <= 1e-6 && dinf <= 1e-6 && rel_gap <= 1e-5;
        };

        // Factor X and S.
        std::vector<Eigen::LLT<MatrixXd>> lltX(nb), lltS(nb);
        std::vector<MatrixXd> Sinv(nb);
        bool factor_ok = true;
        for (int b = 0; b < nb; ++b) {
            lltX[b].compute(rep.X[b]);
            lltS[b].compute(rep.S[b]);
            if (lltX[b].info() != Eigen::Success || lltS[b].info() != Eigen::Success) {
                factor_ok = false;
                break;
            }
            Sinv[b] = lltS[b].solve(MatrixXd::Identity(p.block_dim(b), p.block_dim(b)));
        }
        if (!factor_ok) {
            rep.status = near_done() ? SolveStatus::MaxIterations
                                     : SolveStatus::NumericalFailure;
            return rep;
        }

        double mu = 0.0;
        for (int b = 0; b < nb; ++b) mu += (rep.X[b].cwiseProduct(rep.S[b])).sum();
        mu /= total_dim;

        // Schur complement M_jk = sum_b tr(A_j X A_k S^-1).
        std::vector<std::map<int, MatrixXd>> U(m);  // X A_k Sinv per touched block
        for (int k = 0; k < m; ++k)
            for (int b : w.A_blocks[k]) U[k][b] = rep.X[b] * w.A_dense[k].at(b) * Sinv[b];
        MatrixXd M = MatrixXd::Zero(m, m);
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                double s = 0.0;
                for (int b : w.A_blocks[j]) {
                    auto it = U[k].find(b);
                    if (it != U[k].end())
                        s += (w.A_dense[j].at(b).cwiseProduct(
                                  0.5 * (it->second + it->second.transpose())))
                                 .sum();
                }
                M(j, k) = s;
            }
        M = 0.5 * (M + M.transpose());

        Eigen::LLT<MatrixXd> lltM;
        bool chol_ok = false;
        for (double reg : {0.0, 1e-12, 1e-10, 1e-8}) {
            MatrixXd Mreg = M + reg * MatrixXd::Identity(m, m);
            lltM.compute(Mreg);
            if (lltM.info() == Eigen::Success) {
                chol_ok = true;
                break;
            }
        }
        if (!chol_ok) {
            rep.status = near_done() ? SolveStatus::MaxIterations
                                     : SolveStatus::NumericalFailure;
            return rep;
        }

        MatrixXd MinvF;
        Eigen::LLT<MatrixXd> lltH;
        if (nf > 0) {
            MinvF = lltM.solve(w.F);
            MatrixXd H = w.F.transpose() * MinvF;
            H = 0.5 * (H + H.transpose());
            bool hok = false;
            for (double reg : {0.0, 1e-12, 1e-10, 1e-8}) {
                lltH.compute(H + reg * MatrixXd::Identity(nf, nf));
                if (lltH.info() == Eigen::Success) {
                    hok = true;
                    break;
                }
            }
            if (!hok) {
                rep.status = near_done() ? SolveStatus::MaxIterations
                                         : SolveStatus::NumericalFailure;
                return rep;
            }
        }

        // Solves the Newton system for a given complementarity target Rc.
        auto direction = [&](const std::vector<MatrixXd>& Rc, VectorXd& dy, VectorXd& dv,
                             std::vector<MatrixXd>& dX, std::vector<MatrixXd>& dS) {
            VectorXd rhs1 = rp;
            for (int j = 0; j < m; ++j)
                for (int b : w.A_blocks[j]) {
                    const MatrixXd T = (Rc[b] - rep.X[b] * Rd[b]) * Sinv[b];
                    rhs1(j) -= (w.A_dense[j].at(b).cwiseProduct(0.5 * (T + T.transpose()))).sum();
                }
            if (nf > 0) {
                const VectorXd t = MinvF.transpose() * rhs1;  // F^T M^-1 rhs1
                dv = lltH.solve(t - rf);
                dy = lltM.solve(rhs1 - w.F * dv);
            } else {
                dv.resize(0);
                dy = lltM.solve(rhs1);
            }
            dS.resize(nb);
            dX.resize(nb);
            for (int b = 0; b < nb; ++b) dS[b] = Rd[b];
            for (int j = 0; j < m; ++j)
                for (int b : w.A_blocks[j]) dS[b] -= dy(j) * w.A_dense[j].at(b);
            for (int b = 0; b < nb; ++b) {
                MatrixXd d = (Rc[b] - rep.X[b] * dS[b]) * Sinv[b];
                dX[b] = 0.5 * (d + d.transpose());
            }
        };

        // Predictor.
        std::vector<MatrixXd> Rc(nb);
        for (int b = 0; b < nb; ++b) Rc[b] = -rep.X[b] * rep.S[b];
        VectorXd dy_a, dv_a;
        std::vector<MatrixXd> dX_a, dS_a;
        direction(Rc, dy_a, dv_a, dX_a, dS_a);

        double ap = 1.0, ad = 1.0;
        for (int b = 0; b < nb; ++b) {
            ap = std::min(ap, opt.step_fraction * max_step(lltX[b], dX_a[b]));
            ad = std::min(ad, opt.step_fraction * max_step(lltS[b], dS_a[b]));
        }
        double mu_aff = 0.0;
        for (int b = 0; b < nb; ++b)
            mu_aff += ((rep.X[b] + ap * dX_a[b]).cwiseProduct(rep.S[b] + ad * dS_a[b])).sum();
        mu_aff /= total_dim;
        const double sigma = std::pow(std::max(0.0, std::min(1.0, mu_aff / mu)), 3.0);

        // Corrector.
        for (int b = 0; b < nb; ++b)
            Rc[b] = sigma * mu * MatrixXd::Identity(p.block_dim(b), p.block_dim(b)) -
                    rep.X[b] * rep.S[b] - dX_a[b] * dS_a[b];
        VectorXd dy, dv;
        std::vector<MatrixXd> dX, dS;
        direction(Rc, dy, dv, dX, dS);

        ap = 1.0;
        ad = 1.0;
        for (int b = 0; b < nb; ++b) {
            ap = std::min(ap, opt.step_fraction * max_step(lltX[b], dX[b]));
            ad = std::min(ad, opt.step_fraction * max_step(lltS[b], dS[b]));
        }

        for (int b = 0; b < nb; ++b) {
            rep.X[b] += ap * dX[b];
            rep.S[b] += ad * dS[b];
        }
        rep.y += ad * dy;
        if (nf > 0) rep.free_values += ap * dv;
    }

    rep.status = SolveStatus::MaxIterations;
    return rep;
}

ResidualCheck check_solution(const SdpProblem& p, const SolveReport& rep) {
    const Workspace w = build_workspace(p);
    const int m = p.num_constraints();
    const int nb = p.num_blocks();
    const int nf = p.num_free();

    const double bnorm = 1.0 + (m > 0 ? w.b.cwiseAbs().maxCoeff() : 0.0);
    double cnorm = 1.0;
    for (int b = 0; b < nb; ++b) cnorm = std::max(cnorm, 1.0 + w.C[b].cwiseAbs().maxCoeff());
    if (nf > 0 && w.c_free.size() > 0)
        cnorm = std::max(cnorm, 1.0 + w.c_free.cwiseAbs().maxCoeff());

    double pres = 0.0;
    for (int j = 0; j < m; ++j) {
        double lhs = sparse_inner(p.constraints()[j].entries, rep.X);
        for (const auto& [idx, v] : p.constraints()[j].free_entries)
            lhs += v * rep.free_values(idx);
        pres = std::max(pres, std::abs(lhs - w.b(j)));
    }
    double dres = 0.0;
    for (int b = 0; b < nb; ++b) {
        MatrixXd R = w.C[b] - rep.S[b];
        for (int j = 0; j < m; ++j) {
            auto it = w.A_dense[j].find(b);
            if (it != w.A_dense[j].end()) R -= rep.y(j) * it->second;
        }
        dres = std::max(dres, R.cwiseAbs().maxCoeff());
    }
    if (nf > 0) {
        const VectorXd rf = w.c_free - w.F.transpose() * rep.y;
        if (rf.size() > 0) dres = std::max(dres, rf.cwiseAbs().maxCoeff());
    }

    double pobj = 0.0;
    for (int b = 0; b < nb; ++b) pobj += (w.C[b].cwiseProduct(rep.X[b])).sum();
    if (nf > 0) pobj += w.c_free.dot(rep.free_values);
    const double dobj = w.b.dot(rep.y);

    return {pres / bnorm, dres / cnorm,
            std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj))};
}

}  // namespace chebcert
