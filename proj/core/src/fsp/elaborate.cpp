#include "dcs/fsp/elaborate.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "dcs/error.hpp"

namespace dcs::fsp {

namespace {

constexpr size_t kMaxComponentStates = 1u << 20;
constexpr size_t kMaxComponents = 1u << 16;
constexpr size_t kMaxPatternLabels = 1u << 20;

std::string at(Pos pos) {
    return std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": ";
}

using Env = std::map<std::string, int64_t>;

int64_t eval_expr(const ExprPtr& e, const Env& env) {
    if (auto* lit = std::get_if<Expr::IntLit>(&e->node))
        return lit->value;
    if (auto* ref = std::get_if<Expr::Ref>(&e->node)) {
        auto it = env.find(ref->name);
        if (it == env.end())
            throw ElaborationError(at(e->pos) + "unbound constant '" + ref->name + "'");
        return it->second;
    }
    if (auto* neg = std::get_if<Expr::Neg>(&e->node))
        return -eval_expr(neg->operand, env);
    const auto& bin = std::get<Expr::Bin>(e->node);
    if (is_comparison(bin.op))
        throw ElaborationError(at(e->pos) + "comparison used as an integer value");
    int64_t lhs = eval_expr(bin.lhs, env);
    int64_t rhs = eval_expr(bin.rhs, env);
    return bin.op == BinOp::Add ? lhs + rhs : lhs - rhs;
}

bool eval_guard(const ExprPtr& e, const Env& env) {
    const auto* bin = std::get_if<Expr::Bin>(&e->node);
    if (!bin || !is_comparison(bin->op))
        throw ElaborationError(at(e->pos) + "guard must be a comparison");
    int64_t lhs = eval_expr(bin->lhs, env);
    int64_t rhs = eval_expr(bin->rhs, env);
    switch (bin->op) {
    case BinOp::Lt: return lhs < rhs;
    case BinOp::Le: return lhs <= rhs;
    case BinOp::Gt: return lhs > rhs;
    case BinOp::Ge: return lhs >= rhs;
    case BinOp::Eq: return lhs == rhs;
    case BinOp::Ne: return lhs != rhs;
    default: return false;
    }
}

Label eval_label(const LabelExpr& le, const Env& env) {
    Label label;
    label.name = le.name;
    for (const ExprPtr& idx : le.indices) {
        int64_t v = eval_expr(idx, env);
        if (v < 0)
            throw ElaborationError(at(le.pos) + "negative index " + std::to_string(v) +
                                   " on label '" + le.name + "'");
        label.indices.push_back(static_cast<int32_t>(v));
    }
    return label;
}

void expand_pattern(const LabelPattern& pattern, const Env& env, LabelSet& out) {
    std::vector<std::pair<int64_t, int64_t>> ranges;
    for (const PatternIndex& idx : pattern.indices) {
        int64_t lo = eval_expr(idx.lo, env);
        int64_t hi = idx.hi ? eval_expr(idx.hi, env) : lo;
        if (lo > hi)
            throw ElaborationError(at(pattern.pos) + "empty index range " + std::to_string(lo) +
                                   ".." + std::to_string(hi) + " on label '" + pattern.name + "'");
        if (lo < 0)
            throw ElaborationError(at(pattern.pos) + "negative index on label '" + pattern.name +
                                   "'");
        ranges.emplace_back(lo, hi);
    }
    size_t combinations = 1;
    for (const auto& [lo, hi] : ranges) {
        combinations *= static_cast<size_t>(hi - lo + 1);
        if (combinations > kMaxPatternLabels)
            throw CapacityError("label pattern '" + pattern.name + "' expands to over " +
                                std::to_string(kMaxPatternLabels) + " labels");
    }
    Label label{pattern.name, std::vector<int32_t>(ranges.size(), 0)};
    // Cartesian product over the index ranges.
    std::vector<int64_t> current(ranges.size());
    for (size_t i = 0; i < ranges.size(); ++i)
        current[i] = ranges[i].first;
    while (true) {
        for (size_t i = 0; i < ranges.size(); ++i)
            label.indices[i] = static_cast<int32_t>(current[i]);
        out.insert(label);
        size_t i = ranges.size();
        while (i > 0) {
            --i;
            if (++current[i] <= ranges[i].second)
                break;
            current[i] = ranges[i].first;
            if (i == 0)
                return;
        }
        if (ranges.empty())
            return;
    }
}

LabelSet expand_patterns(const std::vector<LabelPattern>& patterns, const Env& env) {
    LabelSet out;
    for (const LabelPattern& p : patterns)
        expand_pattern(p, env, out);
    return out;
}

// A concrete process state during elaboration: a local process at given
// index values, or a position inside a multi-action branch, or ERROR.
struct StateDesc {
    int32_t local = -1; // -1: ERROR
    std::vector<int64_t> values;
    int32_t branch = -1; // >=0 when inside a chain
    int32_t chain_pos = 0;

    auto operator<=>(const StateDesc&) const = default;
};

class ProcessElaborator {
public:
    ProcessElaborator(const ProcessDef& def, const std::vector<int64_t>& args, const Env& consts)
        : def_(def) {
        if (args.size() > def.params.size())
            throw ElaborationError(at(def.pos) + "process '" + def.name + "' takes " +
                                   std::to_string(def.params.size()) + " parameter(s), got " +
                                   std::to_string(args.size()));
        env_ = consts;
        for (size_t i = 0; i < def.params.size(); ++i) {
            int64_t v = i < args.size() ? args[i] : eval_expr(def.params[i].default_value, consts);
            env_[def.params[i].name] = v;
        }
    }

    Lts run(const std::string& instance_name) {
        StateDesc initial = resolve_target(def_.locals[0].name, {}, def_.pos);
        StateId init_id = intern(initial);
        while (!worklist_.empty()) {
            StateDesc desc = worklist_.front();
            worklist_.pop_front();
            expand_state(desc);
        }
        for (const LabelPattern& p : def_.alphabet_ext)
            for (const Label& l : expand_patterns({p}, env_))
                builder_.alphabet_add(l);
        return builder_.build(instance_name, init_id);
    }

private:
    const LocalDef& local(int32_t i) const { return def_.locals[i]; }

    int32_t find_local(const std::string& name, Pos pos) const {
        for (size_t i = 0; i < def_.locals.size(); ++i)
            if (def_.locals[i].name == name)
                return static_cast<int32_t>(i);
        throw ElaborationError(at(pos) + "unknown local process '" + name + "' in '" + def_.name +
                               "'");
    }

    // Follows alias equations down to a branch-carrying local or ERROR,
    // checking declared index ranges along the way.
    StateDesc resolve_target(const std::string& name, std::vector<int64_t> values, Pos pos,
                             int depth = 0) {
        if (depth > static_cast<int>(def_.locals.size()))
            throw ElaborationError(at(pos) + "cyclic alias chain through '" + name + "' in '" +
                                   def_.name + "'");
        int32_t idx = find_local(name, pos);
        const LocalDef& l = def_.locals[idx];
        if (values.size() != l.indices.size())
            throw ElaborationError(at(pos) + "local process '" + name + "' expects " +
                                   std::to_string(l.indices.size()) + " index value(s), got " +
                                   std::to_string(values.size()));
        Env scope = env_;
        for (size_t i = 0; i < values.size(); ++i) {
            int64_t lo = eval_expr(l.indices[i].lo, scope);
            int64_t hi = eval_expr(l.indices[i].hi, scope);
            if (lo > hi)
                throw ElaborationError(at(l.indices[i].pos) + "empty index range " +
                                       std::to_string(lo) + ".." + std::to_string(hi) + " on '" +
                                       name + "'");
            if (values[i] < lo || values[i] > hi)
                throw ElaborationError(at(pos) + "index " + std::to_string(values[i]) + " on '" +
                                       name + "' outside " + std::to_string(lo) + ".." +
                                       std::to_string(hi));
            scope[l.indices[i].var] = values[i];
        }
        if (!l.body.is_alias)
            return {idx, std::move(values), -1, 0};
        return resolve_alias(l.body.alias, scope, l.pos, depth);
    }

    StateDesc resolve_alias(const Target& target, const Env& scope, Pos pos, int depth) {
        if (target.is_error)
            return error_desc();
        std::vector<int64_t> values;
        for (const ExprPtr& e : target.ref.indices)
            values.push_back(eval_expr(e, scope));
        return resolve_target(target.ref.name, std::move(values), pos, depth + 1);
    }

    StateDesc error_desc() const { return {-1, {}, -1, 0}; }

    std::string state_name(const StateDesc& desc) const {
        if (desc.local < 0)
            return "ERROR";
        std::string name = local(desc.local).name;
        for (int64_t v : desc.values)
            name += "." + std::to_string(v);
        if (desc.branch >= 0)
            name += "#b" + std::to_string(desc.branch) + "p" + std::to_string(desc.chain_pos);
        return name;
    }

    StateId intern(const StateDesc& desc) {
        auto it = ids_.find(desc);
        if (it != ids_.end())
            return it->second;
        if (builder_.n_states() >= kMaxComponentStates)
            throw CapacityError("component '" + def_.name + "' exceeds " +
                                std::to_string(kMaxComponentStates) + " states");
        StateId id = builder_.state(state_name(desc));
        ids_.emplace(desc, id);
        if (desc.local < 0)
            builder_.mark_error(id);
        else
            worklist_.push_back(desc);
        return id;
    }

    Env scope_of(const StateDesc& desc) const {
        Env scope = env_;
        const LocalDef& l = local(desc.local);
        for (size_t i = 0; i < desc.values.size(); ++i)
            scope[l.indices[i].var] = desc.values[i];
        return scope;
    }

    void expand_state(const StateDesc& desc) {
        if (desc.local < 0)
            return; // ERROR is absorbing
        StateId from = ids_.at(desc);
        Env scope = scope_of(desc);
        const LocalDef& l = local(desc.local);
        if (desc.branch >= 0) {
            emit_chain_step(desc, l.body.branches[desc.branch], scope, from);
            return;
        }
        for (size_t b = 0; b < l.body.branches.size(); ++b) {
            const Branch& branch = l.body.branches[b];
            if (branch.guard && !eval_guard(branch.guard, scope))
                continue;
            Label label = eval_label(branch.actions[0], scope);
            StateDesc next = branch.actions.size() > 1
                                 ? StateDesc{desc.local, desc.values, static_cast<int32_t>(b), 1}
                                 : resolve_alias(branch.target, scope, branch.pos, 0);
            builder_.transition(from, label, intern(next));
        }
    }

    void emit_chain_step(const StateDesc& desc, const Branch& branch, const Env& scope,
                         StateId from) {
        size_t pos = static_cast<size_t>(desc.chain_pos);
        Label label = eval_label(branch.actions[pos], scope);
        StateDesc next = pos + 1 < branch.actions.size()
                             ? StateDesc{desc.local, desc.values, desc.branch,
                                         desc.chain_pos + 1}
                             : resolve_alias(branch.target, scope, branch.pos, 0);
        builder_.transition(from, label, intern(next));
    }

    const ProcessDef& def_;
    Env env_;
    LtsBuilder builder_;
    std::map<StateDesc, StateId> ids_;
    std::deque<StateDesc> worklist_;
};

class Elaborator {
public:
    Elaborator(const SpecAst& ast, const Bindings& bindings) : ast_(ast) {
        consts_ = bindings;
        for (const ConstDef& c : ast.consts)
            if (!consts_.count(c.name))
                consts_[c.name] = eval_expr(c.value, consts_);
    }

    Elaboration run() {
        Elaboration out;
        const CompositeDef* target = pick_target();
        if (target) {
            out.target = target->name;
            walk(target->body, consts_, out.components, 0);
        } else {
            // No composite: a file with a single process elaborates that
            // process with default parameters.
            if (ast_.processes.size() != 1)
                throw ElaborationError("no composite definition and no unique process to "
                                       "elaborate; add a ||Composite or a 'target' directive");
            out.target = ast_.processes[0].name;
            out.components.push_back(instantiate(ast_.processes[0], {}));
        }

        const Directives& d = ast_.directives;
        out.controllable = expand_patterns(d.controllable, consts_);
        out.reach = expand_patterns(d.reach, consts_);
        out.avoid = expand_patterns(d.avoid, consts_);
        if (d.has_controllable || d.has_reach || d.has_avoid)
            out.problem.emplace(out.components, out.controllable, out.reach, out.avoid);
        return out;
    }

private:
    const CompositeDef* pick_target() const {
        if (!ast_.directives.target.empty()) {
            for (const CompositeDef& c : ast_.composites)
                if (c.name == ast_.directives.target)
                    return &c;
            throw ElaborationError("target '" + ast_.directives.target +
                                   "' does not name a composite");
        }
        if (ast_.composites.size() == 1)
            return &ast_.composites[0];
        if (ast_.composites.empty())
            return nullptr;
        throw ElaborationError("several composites defined; pick one with 'target Name'");
    }

    const ProcessDef* find_process(const std::string& name) const {
        for (const ProcessDef& p : ast_.processes)
            if (p.name == name)
                return &p;
        return nullptr;
    }

    const CompositeDef* find_composite(const std::string& name) const {
        for (const CompositeDef& c : ast_.composites)
            if (c.name == name)
                return &c;
        return nullptr;
    }

    Lts instantiate(const ProcessDef& def, const std::vector<int64_t>& args) {
        std::string name = def.name;
        if (!args.empty()) {
            name += '(';
            for (size_t i = 0; i < args.size(); ++i)
                name += (i ? "," : "") + std::to_string(args[i]);
            name += ')';
        }
        auto key = std::make_pair(def.name, args);
        auto it = cache_.find(key);
        if (it != cache_.end()) {
            Lts copy = it->second;
            copy.name = name;
            return copy;
        }
        Lts lts = ProcessElaborator(def, args, consts_).run(name);
        cache_.emplace(std::move(key), lts);
        return lts;
    }

    void walk(const CompositeExprPtr& expr, const Env& env, std::vector<Lts>& out, int depth) {
        if (depth > 64)
            throw ElaborationError("composite nesting too deep (cyclic composite reference?)");
        if (out.size() >= kMaxComponents)
            throw CapacityError("composite expands to over " + std::to_string(kMaxComponents) +
                                " component instances");
        if (auto* inst = std::get_if<CompositeExpr::Instance>(&expr->node)) {
            if (const ProcessDef* def = find_process(inst->name)) {
                std::vector<int64_t> args;
                for (const ExprPtr& e : inst->args)
                    args.push_back(eval_expr(e, env));
                out.push_back(instantiate(*def, args));
                return;
            }
            const CompositeDef* comp = find_composite(inst->name);
            if (!comp)
                throw ElaborationError(at(inst->pos) + "unknown process '" + inst->name + "'");
            if (!inst->args.empty())
                throw ElaborationError(at(inst->pos) + "composite '" + inst->name +
                                       "' takes no arguments");
            walk(comp->body, env, out, depth + 1);
        } else if (auto* par = std::get_if<CompositeExpr::Parallel>(&expr->node)) {
            for (const auto& part : par->parts)
                walk(part, env, out, depth);
        } else {
            const auto& forall = std::get<CompositeExpr::Forall>(expr->node);
            int64_t lo = eval_expr(forall.index.lo, env);
            int64_t hi = eval_expr(forall.index.hi, env);
            if (lo > hi)
                throw ElaborationError(at(forall.index.pos) + "empty forall range " +
                                       std::to_string(lo) + ".." + std::to_string(hi));
            for (int64_t v = lo; v <= hi; ++v) {
                Env inner = env;
                inner[forall.index.var] = v;
                walk(forall.body, inner, out, depth);
            }
        }
    }

    const SpecAst& ast_;
    Env consts_;
    std::map<std::pair<std::string, std::vector<int64_t>>, Lts> cache_;
};

} // namespace

Elaboration elaborate(const SpecAst& ast, const Bindings& bindings) {
    return Elaborator(ast, bindings).run();
}

} // namespace dcs::fsp
