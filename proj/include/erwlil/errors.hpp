/*
   Copyright 2026 The erwlil Authors

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

#pragma once

#include <stdexcept>
#include <string>

namespace erwlil {

/// A parameter or precondition was violated. The message quotes the constraint.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine did not reach its target accuracy.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double achieved_error)
        : std::runtime_error(what + " (achieved error " + std::to_string(achieved_error) + ")"),
          achieved_error_(achieved_error) {}

    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

inline void require(bool condition, const std::string& constraint) {
    if (!condition) throw InvalidArgument("constraint violated: " + constraint);
}

}  // namespace erwlil
