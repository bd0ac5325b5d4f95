#pragma once

#include <stdexcept>

namespace ptob {

/// Malformed or out-of-domain input (negative length, NaN, wrong list size...).
class InvalidInput : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Well-formed input for which no geometric solution exists.
class Infeasible : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

}  // namespace ptob
