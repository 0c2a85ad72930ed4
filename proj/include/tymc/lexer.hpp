#pragma once

#include <string_view>
#include <vector>

#include "tymc/token.hpp"

namespace tymc {

/// Split tym source into tokens. The result always ends with one EndOfFile.
///
/// Line breaks become Newline tokens (runs of blank lines collapse to one),
/// `%` comments are dropped and `;` acts as a statement terminator. A line
/// whose first non-blank character is `$` yields a single Directive token.
///
/// Throws CompileError with code UnterminatedString, IllegalCharacter or
/// MalformedDirective.
std::vector<Token> tokenize(std::string_view source);

}  // namespace tymc
