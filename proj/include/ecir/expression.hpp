#pragma once

#include <memory>
#include <string>

namespace ecir {

// Arithmetic expressions in one variable `s`, used to specify model
// coefficient functions on the command line / in config files.
//
// Grammar:
//   expr    := '-'? term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := primary ('^' factor)?          (right associative)
//   primary := number | 's' | '(' expr ')' | func '(' expr ')'
//   func    := exp | sin | cos | sqrt
class Expression {
public:
    // Throws ConfigError with a byte offset on malformed input.
    static Expression parse(const std::string& text);

    double evaluate(double s) const;

    // Canonical fully-parenthesized text; parse(render()) evaluates
    // identically to the original.
    std::string render() const;

    struct Node;

private:
    std::shared_ptr<const Node> root_;
};

}  // namespace ecir
