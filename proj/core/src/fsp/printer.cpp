#include "dcs/fsp/printer.hpp"

#include <sstream>

namespace dcs::fsp {

namespace {

// Precedence levels: 0 comparison (non-associative), 1 add/sub, 2 unary.
int precedence(const Expr& e) {
    if (auto* bin = std::get_if<Expr::Bin>(&e.node))
        return is_comparison(bin->op) ? 0 : 1;
    return 3;
}

void print_expr_rec(std::ostream& os, const ExprPtr& e, int min_prec) {
    int prec = precedence(*e);
    bool parens = prec < min_prec;
    if (parens)
        os << '(';
    if (auto* lit = std::get_if<Expr::IntLit>(&e->node)) {
        os << lit->value;
    } else if (auto* ref = std::get_if<Expr::Ref>(&e->node)) {
        os << ref->name;
    } else if (auto* neg = std::get_if<Expr::Neg>(&e->node)) {
        os << '-';
        print_expr_rec(os, neg->operand, 3);
    } else {
        const auto& bin = std::get<Expr::Bin>(e->node);
        print_expr_rec(os, bin.lhs, prec);
        os << ' ' << to_string(bin.op) << ' ';
        print_expr_rec(os, bin.rhs, prec + 1);
    }
    if (parens)
        os << ')';
}

void print_label_expr(std::ostream& os, const LabelExpr& l) {
    os << l.name;
    for (const ExprPtr& idx : l.indices) {
        os << '[';
        print_expr_rec(os, idx, 0);
        os << ']';
    }
}

void print_pattern(std::ostream& os, const LabelPattern& p) {
    os << p.name;
    for (const PatternIndex& idx : p.indices) {
        os << '[';
        print_expr_rec(os, idx.lo, 0);
        if (idx.hi) {
            os << "..";
            print_expr_rec(os, idx.hi, 0);
        }
        os << ']';
    }
}

void print_pattern_set(std::ostream& os, const std::vector<LabelPattern>& patterns) {
    os << '{';
    for (size_t i = 0; i < patterns.size(); ++i) {
        os << (i ? ", " : "");
        print_pattern(os, patterns[i]);
    }
    os << '}';
}

void print_target(std::ostream& os, const Target& t) {
    if (t.is_error) {
        os << "ERROR";
        return;
    }
    os << t.ref.name;
    for (const ExprPtr& idx : t.ref.indices) {
        os << '[';
        print_expr_rec(os, idx, 0);
        os << ']';
    }
}

void print_body(std::ostream& os, const LocalBody& body, const std::string& indent) {
    if (body.is_alias) {
        print_target(os, body.alias);
        return;
    }
    os << '(';
    for (size_t i = 0; i < body.branches.size(); ++i) {
        const Branch& b = body.branches[i];
        if (i)
            os << '\n' << indent << " | ";
        if (b.guard) {
            os << "when (";
            print_expr_rec(os, b.guard, 0);
            os << ") ";
        }
        for (const LabelExpr& a : b.actions) {
            print_label_expr(os, a);
            os << " -> ";
        }
        print_target(os, b.target);
    }
    os << ')';
}

void print_composite_expr(std::ostream& os, const CompositeExprPtr& e) {
    if (auto* inst = std::get_if<CompositeExpr::Instance>(&e->node)) {
        os << inst->name;
        if (!inst->args.empty()) {
            os << '(';
            for (size_t i = 0; i < inst->args.size(); ++i) {
                os << (i ? ", " : "");
                print_expr_rec(os, inst->args[i], 0);
            }
            os << ')';
        }
    } else if (auto* par = std::get_if<CompositeExpr::Parallel>(&e->node)) {
        os << '(';
        for (size_t i = 0; i < par->parts.size(); ++i) {
            if (i)
                os << " || ";
            print_composite_expr(os, par->parts[i]);
        }
        os << ')';
    } else {
        const auto& forall = std::get<CompositeExpr::Forall>(e->node);
        os << "forall [" << forall.index.var << ':';
        print_expr_rec(os, forall.index.lo, 0);
        os << "..";
        print_expr_rec(os, forall.index.hi, 0);
        os << "] ";
        print_composite_expr(os, forall.body);
    }
}

} // namespace

std::string print_expr(const ExprPtr& expr) {
    std::ostringstream os;
    print_expr_rec(os, expr, 0);
    return os.str();
}

std::string print(const SpecAst& ast) {
    std::ostringstream os;
    for (const ConstDef& c : ast.consts)
        os << "const " << c.name << " = " << print_expr(c.value) << '\n';
    if (!ast.consts.empty())
        os << '\n';

    for (const ProcessDef& p : ast.processes) {
        os << p.name;
        if (!p.params.empty()) {
            os << '(';
            for (size_t i = 0; i < p.params.size(); ++i)
                os << (i ? ", " : "") << p.params[i].name << '='
                   << print_expr(p.params[i].default_value);
            os << ')';
        }
        os << " = ";
        print_body(os, p.locals[0].body, "  ");
        for (size_t i = 1; i < p.locals.size(); ++i) {
            const LocalDef& l = p.locals[i];
            os << ",\n  " << l.name;
            for (const IndexDecl& d : l.indices)
                os << '[' << d.var << ':' << print_expr(d.lo) << ".." << print_expr(d.hi) << ']';
            os << " = ";
            print_body(os, l.body, "   ");
        }
        if (!p.alphabet_ext.empty()) {
            os << "\n  +";
            print_pattern_set(os, p.alphabet_ext);
        }
        os << ".\n\n";
    }

    for (const CompositeDef& c : ast.composites) {
        os << "||" << c.name << " = ";
        print_composite_expr(os, c.body);
        os << ".\n\n";
    }

    const Directives& d = ast.directives;
    if (d.has_controllable) {
        os << "controllable ";
        print_pattern_set(os, d.controllable);
        os << '\n';
    }
    if (d.has_reach) {
        os << "reach ";
        print_pattern_set(os, d.reach);
        os << '\n';
    }
    if (d.has_avoid) {
        os << "avoid ";
        print_pattern_set(os, d.avoid);
        os << '\n';
    }
    if (!d.target.empty())
        os << "target " << d.target << '\n';
    return os.str();
}

} // namespace dcs::fsp
