#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dcs::fsp {

enum class Tok {
    Eof,
    UcIdent, // process / constant / parameter names
    LcIdent, // action names and index variables
    Int,
    Dot,
    DotDot,
    Comma,
    Colon,
    Assign, // =
    EqEq,
    NotEq,
    Lt,
    Le,
    Gt,
    Ge,
    Arrow, // ->
    Bar,
    BarBar,
    Plus,
    Minus,
    Star, // rejected by the parser; lexed for a readable diagnostic
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    KwConst,
    KwWhen,
    KwForall,
    KwControllable,
    KwReach,
    KwAvoid,
    KwTarget,
    KwError, // ERROR
};

const char* token_name(Tok t);

struct Token {
    Tok kind;
    std::string text;
    int64_t value = 0; // Tok::Int
    int line = 1;
    int col = 1;
};

// Whole-input tokenizer; throws ParseError on bad characters.
std::vector<Token> tokenize(std::string_view input);

} // namespace dcs::fsp
