/*
 *  Copyright (C) 2026  The dlp authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 *
 */

#ifndef DLP_PARSER_HPP
#define DLP_PARSER_HPP

#include <span>
#include <string>
#include <string_view>

#include "dlp/model.hpp"

namespace dlp {

struct Source {
    std::string name;
    std::string text;
};

/// Parses rules (and at most one `?`-terminated query) from the sources,
/// read as one stream in order. Throws ParseError or ArityError.
Program parse_program(std::span<const Source> sources);
Program parse_program(std::string_view text, std::string_view file = {});

/// Parses a standalone `l1, ..., ln?` query, interning names into `symbols`.
Query parse_query(std::string_view text, SymbolTable& symbols, std::string_view file = {});

/// Parses a `{l1, l2, ...}` literal set (ground literals only).
std::vector<Literal> parse_literal_set(std::string_view text, SymbolTable& symbols, std::string_view file = {});

} // namespace dlp

#endif
