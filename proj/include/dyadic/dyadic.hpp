#ifndef DYADIC_DYADIC_HPP
#define DYADIC_DYADIC_HPP

#include "dyadic/checks.hpp"
#include "dyadic/cli.hpp"
#include "dyadic/coding.hpp"
#include "dyadic/construction.hpp"
#include "dyadic/error.hpp"
#include "dyadic/index_set.hpp"
#include "dyadic/interval_trace.hpp"
#include "dyadic/io.hpp"
#include "dyadic/kernel.hpp"
#include "dyadic/rational.hpp"
#include "dyadic/space.hpp"
#include "dyadic/subbase.hpp"
#include "dyadic/symbolic_set.hpp"
#include "dyadic/ternary_word.hpp"

#endif  // DYADIC_DYADIC_HPP
