// Copyright 2026 The ConXsense Authors.
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conxsense {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class MalformedRecord : public Error {
 public:
  MalformedRecord(std::size_t line_no, std::string reason)
      : Error("line " + std::to_string(line_no) + ": " + reason),
        line_no_(line_no),
        reason_(std::move(reason)) {}

  std::size_t line_no() const noexcept { return line_no_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_no_;
  std::string reason_;
};

class EmptyTrace : public Error {
 public:
  EmptyTrace() : Error("trace contains no valid records") {}
};

class BothEmpty : public Error {
 public:
  BothEmpty() : Error("jaccard distance is undefined for two empty sets") {}
};

class EmptyMembers : public Error {
 public:
  EmptyMembers() : Error("centroid of an empty observation list") {}
};

class NoFeedback : public Error {
 public:
  explicit NoFeedback(const std::string& task)
      : Error("no feedback records carry a label for task '" + task + "'") {}
};

class InsufficientData : public Error {
 public:
  InsufficientData(std::string cls, std::size_t needed)
      : Error("class '" + cls + "' needs at least " + std::to_string(needed) +
              " examples"),
        cls_(std::move(cls)),
        needed_(needed) {}

  const std::string& cls() const noexcept { return cls_; }
  std::size_t needed() const noexcept { return needed_; }

 private:
  std::string cls_;
  std::size_t needed_;
};

class TooFewExamples : public Error {
 public:
  using Error::Error;
};

class OneClassOnly : public Error {
 public:
  OneClassOnly() : Error("ROC analysis needs both positive and negative scores") {}
};

class UnknownSensor : public Error {
 public:
  /// `task` is "*" when the sensor appears nowhere in the policy.
  UnknownSensor(const std::string& task, const std::string& sensor)
      : Error(task == "*" ? "sensor '" + sensor + "' is not mentioned by the policy"
                          : "no confidence threshold configured for task '" + task +
                                "' and sensor '" + sensor + "'") {}
};

class InvalidSchedule : public Error {
 public:
  using Error::Error;
};

}  // namespace conxsense
