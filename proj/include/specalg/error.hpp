/*
   Copyright 2026 The specalg Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef SPECALG_ERROR_HPP
#define SPECALG_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace specalg {

// Validation errors reject malformed or out-of-contract input, numerical
// errors mean an iterative kernel did not reach its accuracy target, and
// domain errors report a mathematical fact about a valid input (an element
// that has no inverse, a point that is not in the spectrum, ...).
enum class ErrorCategory { validation, numerical, domain };

class Error : public std::runtime_error {
public:
    Error(std::string name, ErrorCategory category, const std::string& detail)
        : std::runtime_error(name + ": " + detail),
          name_(std::move(name)),
          detail_(detail),
          category_(category) {}

    const std::string& name() const noexcept { return name_; }
    const std::string& detail() const noexcept { return detail_; }
    ErrorCategory category() const noexcept { return category_; }

private:
    std::string name_;
    std::string detail_;
    ErrorCategory category_;
};

#define SPECALG_DEFINE_ERROR(Name, Category)                                  \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& detail)                              \
            : Error(#Name, ErrorCategory::Category, detail) {}                \
    };

SPECALG_DEFINE_ERROR(ValidationError, validation)
SPECALG_DEFINE_ERROR(AlgebraMismatch, validation)
SPECALG_DEFINE_ERROR(NotIdempotent, validation)
SPECALG_DEFINE_ERROR(ZeroIdempotent, validation)
SPECALG_DEFINE_ERROR(NotClosedUnderMultiplication, validation)
SPECALG_DEFINE_ERROR(NotProper, validation)
SPECALG_DEFINE_ERROR(NotSurjective, validation)

SPECALG_DEFINE_ERROR(ConvergenceFailure, numerical)
SPECALG_DEFINE_ERROR(QuadratureUnresolved, numerical)
SPECALG_DEFINE_ERROR(LiftDivergence, numerical)
SPECALG_DEFINE_ERROR(ConclusionMismatch, numerical)

SPECALG_DEFINE_ERROR(NotInvertible, domain)
SPECALG_DEFINE_ERROR(OnSpectrum, domain)
SPECALG_DEFINE_ERROR(NotIsolated, domain)
SPECALG_DEFINE_ERROR(IdempotentInKernel, domain)
SPECALG_DEFINE_ERROR(HypothesisFailed, domain)
SPECALG_DEFINE_ERROR(NotKDInvertible, domain)
SPECALG_DEFINE_ERROR(ElementInvertible, domain)

#undef SPECALG_DEFINE_ERROR

class NoGroupInverse : public Error {
public:
    explicit NoGroupInverse(std::size_t index)
        : Error("NoGroupInverse", ErrorCategory::domain,
                "Drazin index " + std::to_string(index) + " exceeds 1"),
          index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

}  // namespace specalg

#endif  // SPECALG_ERROR_HPP
