#ifndef PLEARN_PLEARN_HPP
#define PLEARN_PLEARN_HPP

#include "plearn/core.hpp"
#include "plearn/linear.hpp"
#include "plearn/local.hpp"
#include "plearn/oracle.hpp"

#endif  // PLEARN_PLEARN_HPP
