/*
 * Copyright 2026 The atsg authors
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

#ifndef ATSG_ERRORS_HPP
#define ATSG_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace atsg {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A word letter or requested action is not part of the alphabet.
class UnknownActionError : public Error {
public:
  explicit UnknownActionError(const std::string& what) : Error(what) {}
};

/// An enumeration exceeded its configured cap.
class ExplosionCapError : public Error {
public:
  ExplosionCapError(const std::string& what, std::size_t cap)
      : Error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  std::size_t cap() const { return cap_; }

private:
  std::size_t cap_;
};

/// A strategy table has no response for a prime trace that the play needs.
class MissingResponseError : public Error {
public:
  explicit MissingResponseError(const std::string& prime_word)
      : Error("no strategy response for prime trace \"" + prime_word + "\""),
        prime_word_(prime_word) {}
  const std::string& prime_word() const { return prime_word_; }

private:
  std::string prime_word_;
};

/// Strategy enumeration ran into a play that outlives the horizon.
class TruncatedError : public Error {
public:
  explicit TruncatedError(const std::string& what) : Error(what) {}
};

/// The initial state handed to a run enumeration is not a state of the system.
class InitialStateMismatchError : public Error {
public:
  explicit InitialStateMismatchError(const std::string& what) : Error(what) {}
};

/// A trace is not a play of the game it was used with.
class InvalidPlayError : public Error {
public:
  explicit InvalidPlayError(const std::string& what) : Error(what) {}
};

/// Game file rejected, with position information.
class ParseError : public Error {
public:
  ParseError(int line, int column, const std::string& reason)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              reason),
        line_(line), column_(column), reason_(reason) {}
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& reason() const { return reason_; }

private:
  int line_;
  int column_;
  std::string reason_;
};

} // namespace atsg

#endif
