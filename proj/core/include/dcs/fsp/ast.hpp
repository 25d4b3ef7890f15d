#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace dcs::fsp {

struct Pos {
    int line = 0;
    int col = 0;
};

enum class BinOp { Add, Sub, Lt, Le, Gt, Ge, Eq, Ne };

bool is_comparison(BinOp op);
const char* to_string(BinOp op);

// Immutable expression tree. Positions are diagnostic-only and ignored
// by structural equality.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    struct IntLit {
        int64_t value;
    };
    struct Ref {
        std::string name;
    };
    struct Neg {
        ExprPtr operand;
    };
    struct Bin {
        BinOp op;
        ExprPtr lhs;
        ExprPtr rhs;
    };
    std::variant<IntLit, Ref, Neg, Bin> node;
    Pos pos;
};

ExprPtr make_int(int64_t value, Pos pos = {});
ExprPtr make_ref(std::string name, Pos pos = {});
ExprPtr make_neg(ExprPtr operand, Pos pos = {});
ExprPtr make_bin(BinOp op, ExprPtr lhs, ExprPtr rhs, Pos pos = {});

// get[Id], accept
struct LabelExpr {
    std::string name;
    std::vector<ExprPtr> indices;
    Pos pos;
};

// get[0..M], ret[1], accept — used in alphabet extensions and directives
struct PatternIndex {
    ExprPtr lo;
    ExprPtr hi; // null: single value
};
struct LabelPattern {
    std::string name;
    std::vector<PatternIndex> indices;
    Pos pos;
};

// Working[w+1]
struct ProcessRefExpr {
    std::string name;
    std::vector<ExprPtr> indices;
    Pos pos;
};

// ERROR or a local-process reference
struct Target {
    bool is_error = false;
    ProcessRefExpr ref; // unused when is_error
};

// [when (g)] a1 -> a2 -> T
struct Branch {
    ExprPtr guard; // null: unguarded
    std::vector<LabelExpr> actions;
    Target target;
    Pos pos;
};

// [v:lo..hi]
struct IndexDecl {
    std::string var;
    ExprPtr lo;
    ExprPtr hi;
    Pos pos;
};

// Either a guarded choice or an alias of another local process.
struct LocalBody {
    bool is_alias = false;
    std::vector<Branch> branches; // !is_alias
    Target alias;                 // is_alias
};

struct LocalDef {
    std::string name;
    std::vector<IndexDecl> indices;
    LocalBody body;
    Pos pos;
};

struct Param {
    std::string name;
    ExprPtr default_value;
};

// Name(params) = locals[0], locals[1], ... +{ext}.
// locals[0] is the defining equation and carries the process name.
struct ProcessDef {
    std::string name;
    std::vector<Param> params;
    std::vector<LocalDef> locals;
    std::vector<LabelPattern> alphabet_ext;
    Pos pos;
};

struct CompositeExpr;
using CompositeExprPtr = std::shared_ptr<const CompositeExpr>;

struct CompositeExpr {
    struct Instance {
        std::string name;
        std::vector<ExprPtr> args;
        Pos pos;
    };
    struct Parallel {
        std::vector<CompositeExprPtr> parts;
    };
    struct Forall {
        IndexDecl index;
        CompositeExprPtr body;
    };
    std::variant<Instance, Parallel, Forall> node;
};

// ||Name = (...).
struct CompositeDef {
    std::string name;
    CompositeExprPtr body;
    Pos pos;
};

struct ConstDef {
    std::string name;
    ExprPtr value;
    Pos pos;
};

// controllable {..} reach {..} avoid {..} target Name
struct Directives {
    bool has_controllable = false, has_reach = false, has_avoid = false;
    std::vector<LabelPattern> controllable, reach, avoid;
    std::string target; // empty: unset

    bool any() const { return has_controllable || has_reach || has_avoid || !target.empty(); }
};

struct SpecAst {
    std::vector<ConstDef> consts;
    std::vector<ProcessDef> processes;
    std::vector<CompositeDef> composites;
    Directives directives;
};

// Structural equality, ignoring source positions.
bool ast_equal(const SpecAst& a, const SpecAst& b);
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

} // namespace dcs::fsp
