#pragma once

// Umbrella header: deciding whether (x^2 - a_1)...(x^2 - a_n) has roots
// modulo every positive integer, with verifiable certificates, explicit
// counterexample moduli, and constructive roots for certified families.

#include "intersective/arith.hpp"
#include "intersective/certify.hpp"
#include "intersective/crt.hpp"
#include "intersective/errors.hpp"
#include "intersective/family.hpp"
#include "intersective/lifting.hpp"
#include "intersective/oracle.hpp"
#include "intersective/primes.hpp"
#include "intersective/search.hpp"
#include "intersective/square_subsets.hpp"
#include "intersective/squarefree.hpp"
#include "intersective/symbols.hpp"
