#include "dcs/aut.hpp"

#include <fstream>
#include <sstream>

#include "dcs/error.hpp"

namespace dcs {

void write_aut(std::ostream& os, const Lts& lts) {
    size_t n_trans = 0;
    for (const auto& row : lts.states)
        n_trans += row.size();
    os << "des (" << lts.initial << ',' << n_trans << ',' << lts.n_states() << ")\n";
    for (size_t s = 0; s < lts.n_states(); ++s)
        for (const LtsTransition& t : lts.states[s])
            os << '(' << s << ",\"" << lts.alphabet[t.label].str() << "\"," << t.target << ")\n";
}

std::string to_aut(const Lts& lts) {
    std::ostringstream os;
    write_aut(os, lts);
    return os.str();
}

namespace {

void skip_ws(std::istream& is) {
    while (is && std::isspace(is.peek()))
        is.get();
}

void expect_char(std::istream& is, char c) {
    skip_ws(is);
    int got = is.get();
    if (got != c)
        throw Error("E-PARSE", std::string("aut: expected '") + c + "', got '" +
                                   (got == EOF ? std::string("<eof>") : std::string(1, char(got))) +
                                   "'");
}

long read_int(std::istream& is) {
    skip_ws(is);
    long v;
    if (!(is >> v))
        throw Error("E-PARSE", "aut: expected an integer");
    return v;
}

} // namespace

Lts read_aut(std::istream& is, const std::string& name) {
    skip_ws(is);
    std::string word;
    is >> word;
    if (word != "des")
        throw Error("E-PARSE", "aut: missing 'des' header");
    expect_char(is, '(');
    long initial = read_int(is);
    expect_char(is, ',');
    long n_trans = read_int(is);
    expect_char(is, ',');
    long n_states = read_int(is);
    expect_char(is, ')');
    if (n_states <= 0 || initial < 0 || initial >= n_states || n_trans < 0)
        throw Error("E-PARSE", "aut: malformed header");

    struct RawTransition {
        long from;
        Label label;
        long to;
    };
    std::vector<RawTransition> raw;
    raw.reserve(static_cast<size_t>(n_trans));
    for (long i = 0; i < n_trans; ++i) {
        expect_char(is, '(');
        long from = read_int(is);
        expect_char(is, ',');
        skip_ws(is);
        expect_char(is, '"');
        std::string text;
        for (int c = is.get(); c != '"'; c = is.get()) {
            if (c == EOF)
                throw Error("E-PARSE", "aut: unterminated label");
            text += static_cast<char>(c);
        }
        expect_char(is, ',');
        long to = read_int(is);
        expect_char(is, ')');
        if (from < 0 || from >= n_states || to < 0 || to >= n_states)
            throw Error("E-PARSE", "aut: transition endpoint out of range");
        raw.push_back({from, Label::parse(text), to});
    }

    LtsBuilder builder;
    for (long s = 0; s < n_states; ++s)
        builder.state(std::to_string(s));
    for (const auto& t : raw)
        builder.transition(static_cast<StateId>(t.from), t.label, static_cast<StateId>(t.to));
    Lts lts = builder.build(name, static_cast<StateId>(initial));
    lts.state_names.clear(); // numeric names carry no information
    return lts;
}

Lts read_aut_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    return read_aut(in, path);
}

} // namespace dcs
