#include "dcs/fsp/ast.hpp"

namespace dcs::fsp {

bool is_comparison(BinOp op) {
    return op != BinOp::Add && op != BinOp::Sub;
}

const char* to_string(BinOp op) {
    switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    }
    return "?";
}

ExprPtr make_int(int64_t value, Pos pos) {
    return std::make_shared<Expr>(Expr{Expr::IntLit{value}, pos});
}
ExprPtr make_ref(std::string name, Pos pos) {
    return std::make_shared<Expr>(Expr{Expr::Ref{std::move(name)}, pos});
}
ExprPtr make_neg(ExprPtr operand, Pos pos) {
    return std::make_shared<Expr>(Expr{Expr::Neg{std::move(operand)}, pos});
}
ExprPtr make_bin(BinOp op, ExprPtr lhs, ExprPtr rhs, Pos pos) {
    return std::make_shared<Expr>(Expr{Expr::Bin{op, std::move(lhs), std::move(rhs)}, pos});
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b)
        return !a && !b;
    if (a->node.index() != b->node.index())
        return false;
    if (auto* ia = std::get_if<Expr::IntLit>(&a->node))
        return ia->value == std::get<Expr::IntLit>(b->node).value;
    if (auto* ra = std::get_if<Expr::Ref>(&a->node))
        return ra->name == std::get<Expr::Ref>(b->node).name;
    if (auto* na = std::get_if<Expr::Neg>(&a->node))
        return expr_equal(na->operand, std::get<Expr::Neg>(b->node).operand);
    const auto& ba = std::get<Expr::Bin>(a->node);
    const auto& bb = std::get<Expr::Bin>(b->node);
    return ba.op == bb.op && expr_equal(ba.lhs, bb.lhs) && expr_equal(ba.rhs, bb.rhs);
}

namespace {

template <typename T, typename Eq>
bool vec_equal(const std::vector<T>& a, const std::vector<T>& b, Eq eq) {
    if (a.size() != b.size())
        return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!eq(a[i], b[i]))
            return false;
    return true;
}

bool exprs_equal(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
    return vec_equal(a, b, [](const ExprPtr& x, const ExprPtr& y) { return expr_equal(x, y); });
}

bool label_expr_equal(const LabelExpr& a, const LabelExpr& b) {
    return a.name == b.name && exprs_equal(a.indices, b.indices);
}

bool pattern_equal(const LabelPattern& a, const LabelPattern& b) {
    return a.name == b.name &&
           vec_equal(a.indices, b.indices, [](const PatternIndex& x, const PatternIndex& y) {
               return expr_equal(x.lo, y.lo) && expr_equal(x.hi, y.hi);
           });
}

bool ref_equal(const ProcessRefExpr& a, const ProcessRefExpr& b) {
    return a.name == b.name && exprs_equal(a.indices, b.indices);
}

bool target_equal(const Target& a, const Target& b) {
    if (a.is_error != b.is_error)
        return false;
    return a.is_error || ref_equal(a.ref, b.ref);
}

bool branch_equal(const Branch& a, const Branch& b) {
    return expr_equal(a.guard, b.guard) && vec_equal(a.actions, b.actions, label_expr_equal) &&
           target_equal(a.target, b.target);
}

bool index_decl_equal(const IndexDecl& a, const IndexDecl& b) {
    return a.var == b.var && expr_equal(a.lo, b.lo) && expr_equal(a.hi, b.hi);
}

bool local_equal(const LocalDef& a, const LocalDef& b) {
    if (a.name != b.name || !vec_equal(a.indices, b.indices, index_decl_equal))
        return false;
    if (a.body.is_alias != b.body.is_alias)
        return false;
    if (a.body.is_alias)
        return target_equal(a.body.alias, b.body.alias);
    return vec_equal(a.body.branches, b.body.branches, branch_equal);
}

bool process_equal(const ProcessDef& a, const ProcessDef& b) {
    return a.name == b.name &&
           vec_equal(a.params, b.params,
                     [](const Param& x, const Param& y) {
                         return x.name == y.name && expr_equal(x.default_value, y.default_value);
                     }) &&
           vec_equal(a.locals, b.locals, local_equal) &&
           vec_equal(a.alphabet_ext, b.alphabet_ext, pattern_equal);
}

bool composite_expr_equal(const CompositeExprPtr& a, const CompositeExprPtr& b) {
    if (a->node.index() != b->node.index())
        return false;
    if (auto* ia = std::get_if<CompositeExpr::Instance>(&a->node)) {
        const auto& ib = std::get<CompositeExpr::Instance>(b->node);
        return ia->name == ib.name && exprs_equal(ia->args, ib.args);
    }
    if (auto* pa = std::get_if<CompositeExpr::Parallel>(&a->node)) {
        const auto& pb = std::get<CompositeExpr::Parallel>(b->node);
        return vec_equal(pa->parts, pb.parts, composite_expr_equal);
    }
    const auto& fa = std::get<CompositeExpr::Forall>(a->node);
    const auto& fb = std::get<CompositeExpr::Forall>(b->node);
    return index_decl_equal(fa.index, fb.index) && composite_expr_equal(fa.body, fb.body);
}

bool patterns_equal(const std::vector<LabelPattern>& a, const std::vector<LabelPattern>& b) {
    return vec_equal(a, b, pattern_equal);
}

} // namespace

bool ast_equal(const SpecAst& a, const SpecAst& b) {
    return vec_equal(a.consts, b.consts,
                     [](const ConstDef& x, const ConstDef& y) {
                         return x.name == y.name && expr_equal(x.value, y.value);
                     }) &&
           vec_equal(a.processes, b.processes, process_equal) &&
           vec_equal(a.composites, b.composites,
                     [](const CompositeDef& x, const CompositeDef& y) {
                         return x.name == y.name && composite_expr_equal(x.body, y.body);
                     }) &&
           a.directives.has_controllable == b.directives.has_controllable &&
           a.directives.has_reach == b.directives.has_reach &&
           a.directives.has_avoid == b.directives.has_avoid &&
           patterns_equal(a.directives.controllable, b.directives.controllable) &&
           patterns_equal(a.directives.reach, b.directives.reach) &&
           patterns_equal(a.directives.avoid, b.directives.avoid) &&
           a.directives.target == b.directives.target;
}

} // namespace dcs::fsp
