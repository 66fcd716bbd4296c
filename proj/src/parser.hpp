/*
 * Copyright 2026 The apart authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef APART_PARSER_HPP_
#define APART_PARSER_HPP_

#include <optional>
#include <string>

#include "coalgebra.hpp"
#include "rational.hpp"

namespace apart {

// Parse a system description.  Errors carry line:column positions.
Coalgebra parse_system(const std::string& text);

// Canonical text form: fixed declaration layout, weights as exact fractions,
// set and distribution bodies in canonical element order.  parse followed by
// print is a fixpoint, and the printed text is what the system hash covers.
std::string print_system(const Coalgebra& c);

// Render one behaviour value in source syntax (needs the functor for table
// label names).
std::string print_value(const FunctorExpr& f, const BValue& v);

// FNV-1a over the canonical text, as 16 lowercase hex digits.
std::uint64_t fnv1a64(const std::string& data);
std::string system_hash(const Coalgebra& c);

// "p/q", "p", or a plain decimal; nullopt when malformed or q == 0.
std::optional<Rational> parse_rational_string(const std::string& text);

}  // namespace apart

#endif  // APART_PARSER_HPP_
