#pragma once

#include "padic/adeles.hpp"
#include "padic/arith.hpp"
#include "padic/completion.hpp"
#include "padic/error.hpp"
#include "padic/eval.hpp"
#include "padic/expr.hpp"
#include "padic/number.hpp"
#include "padic/primes.hpp"
#include "padic/repl.hpp"
#include "padic/valuation.hpp"
