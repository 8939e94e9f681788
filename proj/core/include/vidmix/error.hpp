// Copyright 2026 The vidmix Authors. All rights reserved.
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

#ifndef VIDMIX_ERROR_HPP_
#define VIDMIX_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace vidmix {

/// Broad failure category, stable across releases; the CLI prints it in its
/// machine-readable error line.
enum class ErrorKind {
  kDimensionMismatch,
  kMalformedMask,
  kInvalidArgument,
  kGeometry,
  kIo,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what)
      : Error(ErrorKind::kDimensionMismatch, what) {}
};

class MalformedMask : public Error {
 public:
  explicit MalformedMask(const std::string& what)
      : Error(ErrorKind::kMalformedMask, what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorKind::kInvalidArgument, what) {}
};

class GeometryError : public Error {
 public:
  explicit GeometryError(const std::string& what)
      : Error(ErrorKind::kGeometry, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

}  // namespace vidmix

#endif  // VIDMIX_ERROR_HPP_
