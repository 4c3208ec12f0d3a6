#pragma once

#include "iwasawa/admissible.hpp"
#include "iwasawa/coleman.hpp"
#include "iwasawa/error.hpp"
#include "iwasawa/euler.hpp"
#include "iwasawa/howell.hpp"
#include "iwasawa/lambda.hpp"
#include "iwasawa/logmatrix.hpp"
#include "iwasawa/modular.hpp"
#include "iwasawa/padic.hpp"
#include "iwasawa/poly.hpp"
#include "iwasawa/quad_lambda.hpp"
#include "iwasawa/sprung.hpp"
#include "iwasawa/theta.hpp"
