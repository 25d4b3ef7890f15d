#include <doctest.h>

#include <algorithm>

#include "dcs/error.hpp"
#include "dcs/fsp/elaborate.hpp"
#include "dcs/fsp/parser.hpp"
#include "dcs/fsp/printer.hpp"
#include "dcs/transfer_line.hpp"
#include "support/fixtures.hpp"
#include "support/naive.hpp"

using namespace dcs;
using namespace dcs::fsp;

namespace {

const Lts& component_named(const Elaboration& elab, const std::string& name) {
    for (const Lts& c : elab.components)
        if (c.name == name)
            return c;
    REQUIRE_MESSAGE(false, "no component named ", name);
    static Lts dummy;
    return dummy;
}

size_t transition_count(const Lts& lts) {
    size_t n = 0;
    for (const auto& row : lts.states)
        n += row.size();
    return n;
}

} // namespace

TEST_CASE("the transfer-line model parses into its three processes") {
    SpecAst ast = parse(generate_transfer_line(2, 1, 1));
    REQUIRE(ast.processes.size() == 3);
    CHECK(ast.processes[0].name == "Machine");
    CHECK(ast.processes[1].name == "TU");
    CHECK(ast.processes[2].name == "Buffer");
    REQUIRE(ast.composites.size() == 1);
    CHECK(ast.composites[0].name == "Plant");
    CHECK(ast.directives.has_controllable);
    CHECK(ast.directives.has_reach);
    CHECK(ast.directives.has_avoid);
    CHECK(ast.directives.target == "Plant");
    // TU carries the ret[0..M] alphabet extension.
    CHECK(ast.processes[1].alphabet_ext.size() == 1);
}

TEST_CASE("the transfer-line model parses in a hand-formatted layout") {
    // Same model, idiosyncratic hand formatting: continuation lines
    // inside parentheses, the alphabet extension on its own line, no
    // directive block.
    SpecAst ast = parse("Machine(Id=0) = Working[0],\n"
                        "  Working[w:0..W] =\n"
                        "    (when (w < W) get[Id]   -> Working[w+1] |\n"
                        "     when (w > 0) put[Id+1] -> Working[w-1] ).\n"
                        "\n"
                        "TU = Idle,\n"
                        "  Idle    = (get[M] -> Testing ),\n"
                        "  Testing = (ret[1] -> reject -> Idle |\n"
                        "             accept -> Idle)\n"
                        "            +{ret[0..M]}.\n"
                        "\n"
                        "Buffer(Id=0) = At[0],\n"
                        "  At[c:0..C] = (\n"
                        "    when (c > 0) get[Id] -> At[c-1] |\n"
                        "    when (c = 0) get[Id] -> ERROR   |\n"
                        "    when (c < C) put[Id] -> At[c+1] |\n"
                        "    when (c = C) put[Id] -> ERROR   |\n"
                        "    when (c < C) ret[Id] -> At[c+1] |\n"
                        "    when (c = C) ret[Id] -> ERROR   ).\n"
                        "\n"
                        "||Plant = (forall [m:0..M-1] (\n"
                        "    Machine(m) || Buffer(m+1)) || TU).\n");
    CHECK(ast.processes.size() == 3);
    CHECK(ast.composites.size() == 1);
    CHECK_FALSE(ast.directives.any());
    // With bindings it elaborates like the generated variant.
    Elaboration elab = elaborate(ast, {{"M", 2}, {"W", 1}, {"C", 1}});
    CHECK(elab.components.size() == 5);
    CHECK_FALSE(elab.problem.has_value());
}

TEST_CASE("empty input is rejected") {
    CHECK_THROWS_WITH_AS(parse(""), doctest::Contains("no definitions"), ParseError);
    CHECK_THROWS_AS(parse("  // only a comment\n"), ParseError);
}

TEST_CASE("the smallest process: one equation, one prefix") {
    SpecAst ast = parse("P = (a -> P).");
    REQUIRE(ast.processes.size() == 1);
    const ProcessDef& p = ast.processes[0];
    CHECK(p.params.empty());
    REQUIRE(p.locals.size() == 1);
    REQUIRE(p.locals[0].body.branches.size() == 1);
    const Branch& b = p.locals[0].body.branches[0];
    CHECK_FALSE(b.guard);
    REQUIRE(b.actions.size() == 1);
    CHECK(b.actions[0].name == "a");
    CHECK(b.target.ref.name == "P");
}

TEST_CASE("parse-print round trip on assorted models") {
    std::vector<std::string> sources = {
        generate_transfer_line(1, 1, 1),
        generate_transfer_line(3, 2, 2),
        "P = (a -> P).",
        "const N = 3\n"
        "Q(X=1) = Lo[0],\n"
        "  Lo[i:0..N] = (when (i < N) up[i] -> Lo[i+1] | when (i == N) top -> ERROR).\n"
        "||Sys = (Q(2) || Q(0)).\n",
        "R = (a -> b -> c -> R | b -> R).\n"
        "||All = (forall [k:0..2] R).\n"
        "controllable {a, b}\nreach {c}\navoid {}\ntarget All\n",
        "S = T, T = (go[1-2] -> T) +{go[0..4], stop}.",
    };
    for (const std::string& source : sources) {
        SpecAst ast = parse(source);
        std::string rendered = print(ast);
        SpecAst reparsed = parse(rendered);
        CHECK_MESSAGE(ast_equal(ast, reparsed), "round trip failed for:\n", rendered);
        // Printing is a fixpoint once the AST is canonical.
        CHECK(print(reparsed) == rendered);
    }
}

TEST_CASE("syntax errors carry a position and expectations") {
    try {
        parse("P = (a -> .");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 11);
        CHECK(std::string(e.what()).find("expected") != std::string::npos);
    }
    CHECK_THROWS_AS(parse("P = (a -> P) Q = (b -> Q)."), ParseError); // missing '.'
    CHECK_THROWS_WITH_AS(parse("P = (a -> P | a -> 3)."), doctest::Contains("expected"),
                         ParseError);
}

TEST_CASE("multiplication is rejected with a diagnostic") {
    CHECK_THROWS_WITH_AS(parse("const N = 2 * 3\nP = (a -> P)."),
                         doctest::Contains("not supported"), ParseError);
}

TEST_CASE("duplicate and unknown names are rejected at parse time") {
    CHECK_THROWS_WITH_AS(parse("P = (a -> P).\nP = (b -> P)."), doctest::Contains("duplicate"),
                         ParseError);
    CHECK_THROWS_WITH_AS(parse("P = (a -> Q)."), doctest::Contains("unknown local"), ParseError);
    CHECK_THROWS_WITH_AS(parse("P = (a -> P).\n||Sys = (P || R)."),
                         doctest::Contains("unknown process"), ParseError);
    CHECK_THROWS_WITH_AS(parse("P = (a -> P).\n||Sys = (P).\ntarget Nope\n"),
                         doctest::Contains("does not name a composite"), ParseError);
}

TEST_CASE("parsing garbage only ever raises a diagnostic") {
    test::SplitMix rng(0xfeed);
    const char charset[] = "PQab01 ()[]{}<>=|.,:+-*/&\n\twhen forall const";
    std::string base = generate_transfer_line(2, 1, 1);
    for (int round = 0; round < 300; ++round) {
        std::string text;
        if (rng.chance(0.5)) {
            // Pure token soup.
            int len = rng.range(0, 120);
            for (int i = 0; i < len; ++i)
                text += charset[rng.range(0, static_cast<int>(sizeof charset) - 2)];
        } else {
            // A valid model with random edits.
            text = base;
            for (int k = rng.range(1, 4); k > 0 && !text.empty(); --k) {
                size_t pos = static_cast<size_t>(rng.range(0, static_cast<int>(text.size()) - 1));
                switch (rng.range(0, 2)) {
                case 0: text.erase(pos, 1); break;
                case 1: text[pos] = charset[rng.range(0, static_cast<int>(sizeof charset) - 2)]; break;
                default: text.insert(pos, 1, charset[rng.range(0, static_cast<int>(sizeof charset) - 2)]);
                }
            }
        }
        try {
            SpecAst ast = parse(text);
            // Accidentally still valid: it must survive a round trip,
            // and elaboration may only fail with a clean diagnostic.
            CHECK(ast_equal(parse(print(ast)), ast));
            try {
                elaborate(ast, {{"M", 2}, {"W", 1}, {"C", 1}});
            } catch (const Error&) {
            }
        } catch (const ParseError&) {
            // expected for most mutations
        }
    }
}

TEST_CASE("machine with W=1 elaborates to the two working states") {
    SpecAst ast = parse("Machine(Id=0) = Working[0],\n"
                        "  Working[w:0..W] =\n"
                        "    (when (w < W) get[Id]   -> Working[w+1] |\n"
                        "     when (w > 0) put[Id+1] -> Working[w-1] ).\n");
    Elaboration elab = elaborate(ast, {{"W", 1}});
    REQUIRE(elab.components.size() == 1);
    const Lts& m = elab.components[0];
    CHECK(m.n_states() == 2);
    CHECK(m.alphabet == std::vector<Label>{test::L("get.0"), test::L("put.1")});
    CHECK(m.state_names == std::vector<std::string>{"Working.0", "Working.1"});
    // get.0 ping-pongs with put.1.
    CHECK(m.successor(0, m.alphabet_index(test::L("get.0"))) == 1);
    CHECK(m.successor(1, m.alphabet_index(test::L("put.1"))) == 0);
    CHECK(m.error_state == kNoState);
}

TEST_CASE("buffer with C=1, Id=1 elaborates to At[0], At[1] and ERROR") {
    SpecAst ast = parse("Buffer(Id=0) = At[0],\n"
                        "  At[c:0..C] = (\n"
                        "    when (c > 0) get[Id] -> At[c-1] |\n"
                        "    when (c = 0) get[Id] -> ERROR   |\n"
                        "    when (c < C) put[Id] -> At[c+1] |\n"
                        "    when (c = C) put[Id] -> ERROR   |\n"
                        "    when (c < C) ret[Id] -> At[c+1] |\n"
                        "    when (c = C) ret[Id] -> ERROR   ).\n"
                        "||Sys = (Buffer(1)).\n");
    Elaboration elab = elaborate(ast, {{"C", 1}});
    REQUIRE(elab.components.size() == 1);
    const Lts& buf = elab.components[0];
    CHECK(buf.name == "Buffer(1)");
    CHECK(buf.n_states() == 3);
    CHECK(transition_count(buf) == 6);
    REQUIRE(buf.error_state != kNoState);
    CHECK(buf.states[buf.error_state].empty());
    CHECK(buf.state_name(buf.error_state) == "ERROR");
    CHECK(buf.alphabet == std::vector<Label>{test::L("get.1"), test::L("put.1"),
                                             test::L("ret.1")});
}

TEST_CASE("a self-looping process elaborates to one state") {
    Elaboration elab = elaborate(parse("P = (a -> P)."));
    REQUIRE(elab.components.size() == 1);
    CHECK(elab.components[0].n_states() == 1);
    CHECK(transition_count(elab.components[0]) == 1);
    CHECK_FALSE(elab.problem.has_value());
}

TEST_CASE("the transfer line instantiates M machines, M buffers and one TU") {
    for (int m = 1; m <= 4; ++m) {
        SpecAst ast = parse(generate_transfer_line(m, 1, 1));
        Elaboration elab = elaborate(ast);
        CHECK(elab.components.size() == static_cast<size_t>(2 * m + 1));
        int machines = 0, buffers = 0, tus = 0;
        for (const Lts& c : elab.components) {
            if (c.name.rfind("Machine", 0) == 0)
                ++machines;
            else if (c.name.rfind("Buffer", 0) == 0)
                ++buffers;
            else if (c.name == "TU")
                ++tus;
        }
        CHECK(machines == m);
        CHECK(buffers == m);
        CHECK(tus == 1);
        REQUIRE(elab.problem.has_value());
        // All get labels controllable; accept/reject to reach; avoid empty.
        CHECK(elab.problem->reach_labels() == test::labels({"accept", "reject"}));
        CHECK(elab.problem->avoid_labels().empty());
        for (const Label& l : elab.problem->controllable_labels())
            CHECK(l.name == "get");
    }
}

TEST_CASE("the TU alphabet extension blocks returns to other buffers") {
    SpecAst ast = parse(generate_transfer_line(2, 1, 1));
    Elaboration elab = elaborate(ast);
    const Lts& tu = component_named(elab, "TU");
    CHECK(tu.n_states() == 3); // Idle, Testing, the post-ret step
    for (int i = 0; i <= 2; ++i)
        CHECK(tu.alphabet_index(test::L("ret." + std::to_string(i))) >= 0);
    // Only ret.1 has a transition; the others exist purely to block.
    size_t ret_transitions = 0;
    for (const auto& row : tu.states)
        for (const LtsTransition& t : row)
            if (tu.alphabet[t.label].name == "ret")
                ++ret_transitions;
    CHECK(ret_transitions == 1);
}

TEST_CASE("unbound constants are reported") {
    SpecAst ast = parse("Machine(Id=0) = Working[0],\n"
                        "  Working[w:0..W] = (when (w < W) get[Id] -> Working[w+1]).\n");
    CHECK_THROWS_WITH_AS(elaborate(ast), doctest::Contains("unbound constant 'W'"),
                         ElaborationError);
}

TEST_CASE("out-of-range local indices are reported") {
    SpecAst ast = parse("P = Q[5],\n  Q[i:0..2] = (a -> Q[i]).");
    CHECK_THROWS_WITH_AS(elaborate(ast), doctest::Contains("outside 0..2"), ElaborationError);
}

TEST_CASE("nondeterministic elaboration is rejected") {
    SpecAst ast = parse("P = (a -> P | a -> Q),\n  Q = (b -> Q).");
    CHECK_THROWS_WITH_AS(elaborate(ast), doctest::Contains("nondeterministic"),
                         ElaborationError);
    // Identical duplicates collapse instead.
    Elaboration ok = elaborate(parse("P = (a -> P | a -> P)."));
    CHECK(transition_count(ok.components[0]) == 1);
}

TEST_CASE("empty forall ranges are rejected") {
    SpecAst ast = parse(generate_transfer_line(1, 1, 1));
    CHECK_THROWS_WITH_AS(elaborate(ast, {{"M", 0}}), doctest::Contains("empty forall range"),
                         ElaborationError);
}

TEST_CASE("bindings override file constants") {
    SpecAst ast = parse(generate_transfer_line(2, 1, 1));
    Elaboration elab = elaborate(ast, {{"M", 1}});
    CHECK(elab.components.size() == 3); // one machine, one buffer, the TU
}

TEST_CASE("guards must be comparisons and values must not be") {
    CHECK_THROWS_WITH_AS(elaborate(parse("P = (when (1 + 1) a -> P).")),
                         doctest::Contains("guard must be a comparison"), ElaborationError);
    CHECK_THROWS_WITH_AS(elaborate(parse("P = Q[1 < 2],\n  Q[i:0..1] = (a -> Q[i]).")),
                         doctest::Contains("comparison used as an integer"), ElaborationError);
}

TEST_CASE("composite references expand inline") {
    SpecAst ast = parse("P = (a -> P).\n"
                        "||Pair = (P || P).\n"
                        "||Sys = (Pair || P).\n"
                        "target Sys\n");
    Elaboration elab = elaborate(ast);
    CHECK(elab.components.size() == 3);
}

TEST_CASE("several composites need an explicit target") {
    SpecAst ast = parse("P = (a -> P).\n||A = (P).\n||B = (P || P).\n");
    CHECK_THROWS_WITH_AS(elaborate(ast), doctest::Contains("pick one with 'target"),
                         ElaborationError);
}
