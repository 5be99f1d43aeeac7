#pragma once

#include "alphabet.hpp"
#include "automaton.hpp"
#include "ca.hpp"
#include "domain.hpp"
#include "domain_spec.hpp"
#include "error.hpp"
#include "operations.hpp"
#include "optimizer.hpp"
#include "output_symbol.hpp"
#include "render.hpp"
#include "stack_filter.hpp"
#include "tdx.hpp"
#include "transducer.hpp"
