/*
 * Copyright (C) 2026 The avail Authors
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

#ifndef AVAIL__ERROR_HPP
#define AVAIL__ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace avail {

/// Base class of every error thrown by the library. Rejections of requests
/// are ordinary return values and never surface as exceptions.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class InvalidRange : public Error { using Error::Error; };
class InsufficientResources : public Error { using Error::Error; };
class DuplicateKey : public Error { using Error::Error; };
class NotFound : public Error { using Error::Error; };
class InvalidHandle : public Error { using Error::Error; };
class ImpossibleRequest : public Error { using Error::Error; };
class InvalidRequest : public Error { using Error::Error; };
class InvalidDuration : public Error { using Error::Error; };
class InconsistentAllocation : public Error { using Error::Error; };
class InvalidSlot : public Error { using Error::Error; };
class StaleReservation : public Error { using Error::Error; };
class InvalidPartition : public Error { using Error::Error; };

class ParseError : public Error
{
public:
  ParseError(std::size_t line, const std::string& what)
  : Error("line " + std::to_string(line) + ": " + what),
    _line(line)
  {
  }

  std::size_t line() const { return _line; }

private:
  std::size_t _line;
};

} // namespace avail

#endif // AVAIL__ERROR_HPP
