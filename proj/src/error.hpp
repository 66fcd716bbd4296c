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

#ifndef APART_ERROR_HPP_
#define APART_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace apart {

// Every failure the library can report, bucketed by how callers should
// react.  Parse and Shape both mean "the input file is bad"; Fragment means
// "the file is fine but the requested operation needs a complete system";
// Proof means "the proof object is malformed" (distinct from a well-formed
// proof that simply does not check, which is a normal result, not an error).
enum class ErrorKind {
  Usage,     // bad arguments from the caller (unknown state name, bad flag)
  Parse,     // lexical/syntactic error in a system file
  Shape,     // value does not fit the declared functor, or wrong functor kind
  Fragment,  // whole-relation operation requested on a partial presentation
  Proof,     // malformed structured proof (not JSON, bad refs, unknown states)
  Internal,  // broken invariant inside the library; always a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace apart

#endif  // APART_ERROR_HPP_
