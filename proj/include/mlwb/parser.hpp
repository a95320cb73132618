#ifndef MLWB_PARSER_HPP
#define MLWB_PARSER_HPP

#include <string>
#include <vector>

#include "mlwb/formula.hpp"

namespace mlwb {

// Parses the concrete syntax:
//
//   formula := iff
//   iff     := imp ('<->' imp)*
//   imp     := or ('->' imp)?               (right associative)
//   or      := and ('|' and)*
//   and     := unary ('&' unary)*
//   unary   := '~' unary | '[' NAME? ']' unary | '<' NAME? '>' unary
//            | ('forall'|'exists') VAR '.' formula | atom
//   atom    := 'T' | 'F' | IDENT ('(' VAR (',' VAR)* ')')? | '(' formula ')'
//
// '[]'/'<>' denote the default modality "box". Quantifier scope extends
// maximally to the right after the dot. Throws ParseError with line/column
// on syntax errors and ArityMismatchError when a predicate symbol occurs
// with two different arities.
Formula parse(const std::string& text);

// Reads one formula per nonblank line; '#' starts a comment line.
std::vector<Formula> parse_corpus(const std::string& text);

}  // namespace mlwb

#endif
