#include "tricolor/lmi.hpp"

#include <algorithm>
#include <stdexcept>

namespace tricolor {

std::string to_string(const VarId& v) {
    auto triple = [&](const char* name) {
        return std::string(name) + "(" + std::to_string(v.i) + "," + std::to_string(v.j) + "," +
               std::to_string(v.k) + ")";
    };
    switch (v.kind) {
        case VarKind::DiagD:
            return "d(" + std::to_string(v.i) + "," + std::to_string(v.i) + "," + std::to_string(v.k) + ")";
        case VarKind::AdjD: return triple("d");
        case VarKind::NonAdjD: return "d(" + std::to_string(v.i) + "," + std::to_string(v.j) + ")";
        case VarKind::BorderD:
            return "d(" + std::to_string(v.i) + ",border," + std::to_string(v.k) + ")";
        case VarKind::CornerD: return "d(corner)";
        case VarKind::NonAdjP: return triple("p");
        case VarKind::DualZ: return triple("z");
        case VarKind::Tau: return "tau";
        case VarKind::Aux: return "x" + std::to_string(v.k);
    }
    return "?";
}

void SymMat::add(int r, int c, double v) {
    if (r > c) std::swap(r, c);
    entries.push_back(Entry{r, c, v});
}

Eigen::MatrixXd SymMat::dense() const {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(side, side);
    add_to(M);
    return M;
}

void SymMat::add_to(Eigen::MatrixXd& M, double scale) const {
    for (const auto& e : entries) {
        M(e.r, e.c) += scale * e.v;
        if (e.r != e.c) M(e.c, e.r) += scale * e.v;
    }
}

double SymMat::inner(const Eigen::MatrixXd& X) const {
    double sum = 0.0;
    for (const auto& e : entries) sum += (e.r == e.c ? 1.0 : 2.0) * e.v * X(e.r, e.c);
    return sum;
}

int LmiProblem::index_of(const VarId& v) const {
    auto it = std::lower_bound(vars.begin(), vars.end(), v);
    if (it == vars.end() || *it != v)
        throw std::out_of_range("variable " + to_string(v) + " not in problem");
    return static_cast<int>(it - vars.begin());
}

int LmiProblem::add_var(const VarId& v, double obj_coeff, VarSign s) {
    if (!vars.empty() && !(vars.back() < v))
        throw std::logic_error("variables must be added in increasing VarId order");
    vars.push_back(v);
    coeff.emplace_back(dim);
    objective.push_back(obj_coeff);
    sign.push_back(s);
    return static_cast<int>(vars.size()) - 1;
}

double objective_value(const LmiProblem& prob, const Assignment& x) {
    if (x.size() != prob.var_count())
        throw std::invalid_argument("assignment size does not match variable count");
    double sum = 0.0;
    for (std::size_t v = 0; v < x.size(); ++v) sum += prob.objective[v] * x[v];
    return sum;
}

Eigen::MatrixXd assemble_matrix(const LmiProblem& prob, const Assignment& x) {
    if (x.size() != prob.var_count())
        throw std::invalid_argument("assignment size does not match variable count");
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(prob.dim, prob.dim);
    prob.constant.add_to(M);
    for (std::size_t v = 0; v < x.size(); ++v)
        if (x[v] != 0.0) prob.coeff[v].add_to(M, x[v]);
    return M;
}

}  // namespace tricolor
