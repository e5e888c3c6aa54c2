// Copyright 2026 The aerofetch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AEROFETCH__ERRORS_HPP_
#define AEROFETCH__ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aerofetch
{

/// Root of every error the library throws. Callers that only need to know
/// "something typed went wrong" catch this.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// geometry
class InvalidDepthError : public Error
{
public:
  using Error::Error;
};

class OutOfBoundsError : public Error
{
public:
  using Error::Error;
};

class BehindCameraError : public Error
{
public:
  using Error::Error;
};

// task grammar
class ParseError : public Error
{
public:
  ParseError(const std::string & message, std::size_t position)
  : Error(message + " (at position " + std::to_string(position) + ")"), position_(position)
  {
  }
  /// Byte offset into the prompt where parsing failed.
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

class UnknownObjectError : public Error
{
public:
  explicit UnknownObjectError(const std::string & token, std::size_t position = 0)
  : Error("unknown object '" + token + "'"), token_(token), position_(position)
  {
  }
  const std::string & token() const noexcept { return token_; }
  std::size_t position() const noexcept { return position_; }

private:
  std::string token_;
  std::size_t position_;
};

class ObjectNotFoundError : public Error
{
public:
  using Error::Error;
};

// human handover
class DegenerateSkeletonError : public Error
{
public:
  using Error::Error;
};

class InvalidParameterError : public Error
{
public:
  using Error::Error;
};

// planner
class InvalidEndpointError : public Error
{
public:
  using Error::Error;
};

class NoPathError : public Error
{
public:
  using Error::Error;
};

class NoFreeCellError : public Error
{
public:
  using Error::Error;
};

// mission / io
class EmptyLogError : public Error
{
public:
  using Error::Error;
};

class ConfigError : public Error
{
public:
  using Error::Error;
};

}  // namespace aerofetch

#endif  // AEROFETCH__ERRORS_HPP_
