#include "dcs/fsp/lexer.hpp"

#include <cctype>

#include "dcs/error.hpp"

namespace dcs::fsp {

const char* token_name(Tok t) {
    switch (t) {
    case Tok::Eof: return "<eof>";
    case Tok::UcIdent: return "uppercase identifier";
    case Tok::LcIdent: return "lowercase identifier";
    case Tok::Int: return "integer";
    case Tok::Dot: return "'.'";
    case Tok::DotDot: return "'..'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Assign: return "'='";
    case Tok::EqEq: return "'=='";
    case Tok::NotEq: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::Arrow: return "'->'";
    case Tok::Bar: return "'|'";
    case Tok::BarBar: return "'||'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::KwConst: return "'const'";
    case Tok::KwWhen: return "'when'";
    case Tok::KwForall: return "'forall'";
    case Tok::KwControllable: return "'controllable'";
    case Tok::KwReach: return "'reach'";
    case Tok::KwAvoid: return "'avoid'";
    case Tok::KwTarget: return "'target'";
    case Tok::KwError: return "'ERROR'";
    }
    return "?";
}

std::vector<Token> tokenize(std::string_view input) {
    std::vector<Token> out;
    size_t i = 0;
    int line = 1, col = 1;

    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k) {
            if (input[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    auto push = [&](Tok kind, size_t len) {
        out.push_back({kind, std::string(input.substr(i, len)), 0, line, col});
        advance(len);
    };

    while (i < input.size()) {
        char c = input[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < input.size() && input[i + 1] == '/') {
            while (i < input.size() && input[i] != '\n')
                advance(1);
            continue;
        }
        if (c == '/' && i + 1 < input.size() && input[i + 1] == '*') {
            int start_line = line, start_col = col;
            advance(2);
            while (i + 1 < input.size() && !(input[i] == '*' && input[i + 1] == '/'))
                advance(1);
            if (i + 1 >= input.size())
                throw ParseError(start_line, start_col, "unterminated comment");
            advance(2);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t len = 1;
            while (i + len < input.size() && std::isdigit(static_cast<unsigned char>(input[i + len])))
                ++len;
            Token t{Tok::Int, std::string(input.substr(i, len)), 0, line, col};
            try {
                t.value = std::stoll(t.text);
            } catch (const std::out_of_range&) {
                throw ParseError(line, col, "integer literal out of range");
            }
            out.push_back(std::move(t));
            advance(len);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t len = 1;
            while (i + len < input.size() &&
                   (std::isalnum(static_cast<unsigned char>(input[i + len])) ||
                    input[i + len] == '_'))
                ++len;
            std::string text(input.substr(i, len));
            Tok kind;
            if (text == "const")
                kind = Tok::KwConst;
            else if (text == "when")
                kind = Tok::KwWhen;
            else if (text == "forall")
                kind = Tok::KwForall;
            else if (text == "controllable")
                kind = Tok::KwControllable;
            else if (text == "reach")
                kind = Tok::KwReach;
            else if (text == "avoid")
                kind = Tok::KwAvoid;
            else if (text == "target")
                kind = Tok::KwTarget;
            else if (text == "ERROR")
                kind = Tok::KwError;
            else
                kind = std::isupper(static_cast<unsigned char>(text[0])) ? Tok::UcIdent
                                                                         : Tok::LcIdent;
            out.push_back({kind, std::move(text), 0, line, col});
            advance(len);
            continue;
        }

        auto two = [&](char second) {
            return i + 1 < input.size() && input[i + 1] == second;
        };
        switch (c) {
        case '.': push(two('.') ? Tok::DotDot : Tok::Dot, two('.') ? 2 : 1); break;
        case ',': push(Tok::Comma, 1); break;
        case ':': push(Tok::Colon, 1); break;
        case '=': push(two('=') ? Tok::EqEq : Tok::Assign, two('=') ? 2 : 1); break;
        case '!':
            if (!two('='))
                throw ParseError(line, col, "stray '!'");
            push(Tok::NotEq, 2);
            break;
        case '<': push(two('=') ? Tok::Le : Tok::Lt, two('=') ? 2 : 1); break;
        case '>': push(two('=') ? Tok::Ge : Tok::Gt, two('=') ? 2 : 1); break;
        case '-': push(two('>') ? Tok::Arrow : Tok::Minus, two('>') ? 2 : 1); break;
        case '|': push(two('|') ? Tok::BarBar : Tok::Bar, two('|') ? 2 : 1); break;
        case '+': push(Tok::Plus, 1); break;
        case '*': push(Tok::Star, 1); break;
        case '(': push(Tok::LParen, 1); break;
        case ')': push(Tok::RParen, 1); break;
        case '[': push(Tok::LBracket, 1); break;
        case ']': push(Tok::RBracket, 1); break;
        case '{': push(Tok::LBrace, 1); break;
        case '}': push(Tok::RBrace, 1); break;
        default:
            throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Tok::Eof, "", 0, line, col});
    return out;
}

} // namespace dcs::fsp
