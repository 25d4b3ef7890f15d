#include "dcs/fsp/parser.hpp"

#include <algorithm>
#include <set>

#include "dcs/error.hpp"
#include "dcs/fsp/lexer.hpp"

namespace dcs::fsp {

namespace {

class Parser {
public:
    explicit Parser(std::string_view input) : tokens_(tokenize(input)) {}

    SpecAst parse_spec() {
        SpecAst ast;
        while (!at(Tok::Eof)) {
            if (at(Tok::KwConst))
                ast.consts.push_back(parse_const());
            else if (at(Tok::BarBar))
                ast.composites.push_back(parse_composite());
            else if (at(Tok::UcIdent))
                ast.processes.push_back(parse_process());
            else if (at(Tok::KwControllable) || at(Tok::KwReach) || at(Tok::KwAvoid) ||
                     at(Tok::KwTarget))
                parse_directive(ast.directives);
            else
                fail("a definition ('const', a process, '||', or a problem directive)");
        }
        if (ast.processes.empty() && ast.composites.empty())
            throw ParseError(peek().line, peek().col, "no definitions");
        check_duplicates(ast);
        check_references(ast);
        return ast;
    }

private:
    const Token& peek(size_t ahead = 0) const {
        size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[i];
    }
    bool at(Tok kind) const { return peek().kind == kind; }
    Token advance() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }
    Pos here() const { return {peek().line, peek().col}; }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        std::string found = t.kind == Tok::Eof ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.line, t.col, "expected " + expected + ", found " + found);
    }

    Token expect(Tok kind, const char* context) {
        if (!at(kind))
            fail(std::string(token_name(kind)) + " " + context);
        return advance();
    }

    bool accept(Tok kind) {
        if (!at(kind))
            return false;
        advance();
        return true;
    }

    // expr := addsub (relop addsub)?   — one non-associative comparison level
    ExprPtr parse_expr() {
        ExprPtr lhs = parse_addsub();
        BinOp op;
        switch (peek().kind) {
        case Tok::Lt: op = BinOp::Lt; break;
        case Tok::Le: op = BinOp::Le; break;
        case Tok::Gt: op = BinOp::Gt; break;
        case Tok::Ge: op = BinOp::Ge; break;
        case Tok::EqEq: op = BinOp::Eq; break;
        case Tok::Assign: op = BinOp::Eq; break; // 'when (c = 0)' form
        case Tok::NotEq: op = BinOp::Ne; break;
        case Tok::Star:
            fail("'+', '-' or a comparison (richer arithmetic is not supported)");
        default: return lhs;
        }
        Pos p = here();
        advance();
        return make_bin(op, std::move(lhs), parse_addsub(), p);
    }

    ExprPtr parse_addsub() {
        ExprPtr lhs = parse_unary();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            if (peek(1).kind == Tok::LBrace)
                break; // '+{...}' alphabet extension, not addition
            BinOp op = at(Tok::Plus) ? BinOp::Add : BinOp::Sub;
            Pos p = here();
            advance();
            lhs = make_bin(op, std::move(lhs), parse_unary(), p);
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        if (at(Tok::Minus)) {
            Pos p = here();
            advance();
            return make_neg(parse_unary(), p);
        }
        if (at(Tok::Star))
            fail("an integer expression (multiplication is not supported)");
        if (at(Tok::Int)) {
            Token t = advance();
            return make_int(t.value, {t.line, t.col});
        }
        if (at(Tok::UcIdent) || at(Tok::LcIdent)) {
            Token t = advance();
            return make_ref(t.text, {t.line, t.col});
        }
        if (accept(Tok::LParen)) {
            ExprPtr inner = parse_expr();
            expect(Tok::RParen, "to close the parenthesized expression");
            return inner;
        }
        fail("an integer expression");
    }

    ConstDef parse_const() {
        Pos p = here();
        expect(Tok::KwConst, "");
        Token name = expect(Tok::UcIdent, "as the constant name");
        expect(Tok::Assign, "after the constant name");
        return {name.text, parse_expr(), p};
    }

    std::vector<ExprPtr> parse_bracket_indices() {
        std::vector<ExprPtr> indices;
        while (accept(Tok::LBracket)) {
            indices.push_back(parse_expr());
            expect(Tok::RBracket, "to close the index");
        }
        return indices;
    }

    LabelExpr parse_action() {
        Pos p = here();
        Token name = expect(Tok::LcIdent, "as the action name");
        return {name.text, parse_bracket_indices(), p};
    }

    Target parse_target() {
        if (accept(Tok::KwError))
            return {true, {}};
        Pos p = here();
        Token name = expect(Tok::UcIdent, "as the target local process (or ERROR)");
        return {false, {name.text, parse_bracket_indices(), p}};
    }

    Branch parse_branch() {
        Branch branch;
        branch.pos = here();
        if (accept(Tok::KwWhen)) {
            expect(Tok::LParen, "after 'when'");
            branch.guard = parse_expr();
            expect(Tok::RParen, "to close the guard");
        }
        branch.actions.push_back(parse_action());
        expect(Tok::Arrow, "after the action");
        while (at(Tok::LcIdent)) {
            branch.actions.push_back(parse_action());
            expect(Tok::Arrow, "after the action");
        }
        branch.target = parse_target();
        return branch;
    }

    LocalBody parse_local_body() {
        LocalBody body;
        if (accept(Tok::LParen)) {
            body.branches.push_back(parse_branch());
            while (accept(Tok::Bar))
                body.branches.push_back(parse_branch());
            expect(Tok::RParen, "to close the choice");
        } else {
            body.is_alias = true;
            body.alias = parse_target();
        }
        return body;
    }

    std::vector<IndexDecl> parse_index_decls() {
        std::vector<IndexDecl> decls;
        while (at(Tok::LBracket)) {
            Pos p = here();
            advance();
            Token var = expect(Tok::LcIdent, "as the index variable");
            expect(Tok::Colon, "after the index variable");
            ExprPtr lo = parse_expr();
            expect(Tok::DotDot, "in the index range");
            ExprPtr hi = parse_expr();
            expect(Tok::RBracket, "to close the index range");
            decls.push_back({var.text, std::move(lo), std::move(hi), p});
        }
        return decls;
    }

    LabelPattern parse_label_pattern() {
        Pos p = here();
        Token name = expect(Tok::LcIdent, "as the label name");
        LabelPattern pattern{name.text, {}, p};
        while (accept(Tok::LBracket)) {
            PatternIndex idx;
            idx.lo = parse_expr();
            if (accept(Tok::DotDot))
                idx.hi = parse_expr();
            expect(Tok::RBracket, "to close the label index");
            pattern.indices.push_back(std::move(idx));
        }
        return pattern;
    }

    std::vector<LabelPattern> parse_label_set() {
        std::vector<LabelPattern> patterns;
        expect(Tok::LBrace, "to open the label set");
        if (!at(Tok::RBrace)) {
            patterns.push_back(parse_label_pattern());
            while (accept(Tok::Comma))
                patterns.push_back(parse_label_pattern());
        }
        expect(Tok::RBrace, "to close the label set");
        return patterns;
    }

    ProcessDef parse_process() {
        ProcessDef def;
        def.pos = here();
        Token name = expect(Tok::UcIdent, "as the process name");
        def.name = name.text;
        if (accept(Tok::LParen)) {
            do {
                Token pname = expect(Tok::UcIdent, "as the parameter name");
                expect(Tok::Assign, "after the parameter name (parameters take defaults)");
                def.params.push_back({pname.text, parse_expr()});
            } while (accept(Tok::Comma));
            expect(Tok::RParen, "to close the parameter list");
        }
        expect(Tok::Assign, "after the process head");
        def.locals.push_back({def.name, {}, parse_local_body(), def.pos});
        while (accept(Tok::Comma)) {
            LocalDef local;
            local.pos = here();
            Token lname = expect(Tok::UcIdent, "as the local process name");
            local.name = lname.text;
            local.indices = parse_index_decls();
            expect(Tok::Assign, "after the local process name");
            local.body = parse_local_body();
            def.locals.push_back(std::move(local));
        }
        if (at(Tok::Plus) && peek(1).kind == Tok::LBrace) {
            advance();
            def.alphabet_ext = parse_label_set();
        }
        expect(Tok::Dot, "to end the process definition");
        return def;
    }

    CompositeExprPtr parse_composite_term() {
        if (accept(Tok::KwForall)) {
            auto decls = parse_index_decls();
            if (decls.size() != 1)
                fail("exactly one index range after 'forall'");
            CompositeExpr::Forall forall{std::move(decls[0]), parse_composite_term()};
            return std::make_shared<CompositeExpr>(CompositeExpr{std::move(forall)});
        }
        if (accept(Tok::LParen)) {
            CompositeExprPtr inner = parse_composite_expr();
            expect(Tok::RParen, "to close the composite expression");
            return inner;
        }
        Pos p = here();
        Token name = expect(Tok::UcIdent, "as the referenced process");
        CompositeExpr::Instance inst{name.text, {}, p};
        if (accept(Tok::LParen)) {
            inst.args.push_back(parse_expr());
            while (accept(Tok::Comma))
                inst.args.push_back(parse_expr());
            expect(Tok::RParen, "to close the argument list");
        }
        return std::make_shared<CompositeExpr>(CompositeExpr{std::move(inst)});
    }

    CompositeExprPtr parse_composite_expr() {
        CompositeExprPtr first = parse_composite_term();
        if (!at(Tok::BarBar))
            return first;
        CompositeExpr::Parallel parallel;
        parallel.parts.push_back(std::move(first));
        while (accept(Tok::BarBar))
            parallel.parts.push_back(parse_composite_term());
        return std::make_shared<CompositeExpr>(CompositeExpr{std::move(parallel)});
    }

    CompositeDef parse_composite() {
        Pos p = here();
        expect(Tok::BarBar, "");
        Token name = expect(Tok::UcIdent, "as the composite name");
        expect(Tok::Assign, "after the composite name");
        CompositeDef def{name.text, parse_composite_expr(), p};
        expect(Tok::Dot, "to end the composite definition");
        return def;
    }

    void parse_directive(Directives& dir) {
        Token kw = advance();
        switch (kw.kind) {
        case Tok::KwControllable:
            if (dir.has_controllable)
                throw ParseError(kw.line, kw.col, "duplicate 'controllable' directive");
            dir.has_controllable = true;
            dir.controllable = parse_label_set();
            break;
        case Tok::KwReach:
            if (dir.has_reach)
                throw ParseError(kw.line, kw.col, "duplicate 'reach' directive");
            dir.has_reach = true;
            dir.reach = parse_label_set();
            break;
        case Tok::KwAvoid:
            if (dir.has_avoid)
                throw ParseError(kw.line, kw.col, "duplicate 'avoid' directive");
            dir.has_avoid = true;
            dir.avoid = parse_label_set();
            break;
        case Tok::KwTarget: {
            if (!dir.target.empty())
                throw ParseError(kw.line, kw.col, "duplicate 'target' directive");
            Token name = expect(Tok::UcIdent, "as the target composite");
            dir.target = name.text;
            break;
        }
        default: fail("a directive");
        }
    }

    void check_duplicates(const SpecAst& ast) const {
        std::set<std::string> consts, defs;
        for (const ConstDef& c : ast.consts)
            if (!consts.insert(c.name).second)
                throw ParseError(c.pos.line, c.pos.col, "duplicate constant '" + c.name + "'");
        for (const ProcessDef& p : ast.processes) {
            if (!defs.insert(p.name).second)
                throw ParseError(p.pos.line, p.pos.col, "duplicate definition '" + p.name + "'");
            std::set<std::string> locals;
            for (const LocalDef& l : p.locals)
                if (!locals.insert(l.name).second)
                    throw ParseError(l.pos.line, l.pos.col,
                                     "duplicate local process '" + l.name + "' in '" + p.name +
                                         "'");
        }
        for (const CompositeDef& c : ast.composites)
            if (!defs.insert(c.name).second)
                throw ParseError(c.pos.line, c.pos.col, "duplicate definition '" + c.name + "'");
    }

    void check_composite_refs(const SpecAst& ast, const CompositeExprPtr& expr) const {
        if (auto* inst = std::get_if<CompositeExpr::Instance>(&expr->node)) {
            bool known =
                std::any_of(ast.processes.begin(), ast.processes.end(),
                            [&](const ProcessDef& p) { return p.name == inst->name; }) ||
                std::any_of(ast.composites.begin(), ast.composites.end(),
                            [&](const CompositeDef& c) { return c.name == inst->name; });
            if (!known)
                throw ParseError(inst->pos.line, inst->pos.col,
                                 "unknown process '" + inst->name + "'");
        } else if (auto* par = std::get_if<CompositeExpr::Parallel>(&expr->node)) {
            for (const auto& part : par->parts)
                check_composite_refs(ast, part);
        } else {
            check_composite_refs(ast, std::get<CompositeExpr::Forall>(expr->node).body);
        }
    }

    void check_references(const SpecAst& ast) const {
        for (const ProcessDef& p : ast.processes) {
            auto check_target = [&](const Target& t, Pos pos) {
                if (t.is_error)
                    return;
                bool known = std::any_of(p.locals.begin(), p.locals.end(),
                                         [&](const LocalDef& l) { return l.name == t.ref.name; });
                if (!known)
                    throw ParseError(pos.line, pos.col,
                                     "unknown local process '" + t.ref.name + "' in '" + p.name +
                                         "'");
            };
            for (const LocalDef& l : p.locals) {
                if (l.body.is_alias) {
                    check_target(l.body.alias, l.pos);
                } else {
                    for (const Branch& b : l.body.branches)
                        check_target(b.target, b.pos);
                }
            }
        }
        for (const CompositeDef& c : ast.composites)
            check_composite_refs(ast, c.body);
        if (!ast.directives.target.empty()) {
            bool known = std::any_of(
                ast.composites.begin(), ast.composites.end(),
                [&](const CompositeDef& c) { return c.name == ast.directives.target; });
            if (!known)
                throw ParseError(0, 0, "target '" + ast.directives.target +
                                           "' does not name a composite");
        }
    }

    std::vector<Token> tokens_;
    size_t pos_ = 0;
};

} // namespace

SpecAst parse(std::string_view input) {
    return Parser(input).parse_spec();
}

} // namespace dcs::fsp
