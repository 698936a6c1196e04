#pragma once

#include "selfverify/alphabet.hpp"
#include "selfverify/dfa.hpp"
#include "selfverify/error.hpp"
#include "selfverify/io.hpp"
#include "selfverify/linrep.hpp"
#include "selfverify/lstar.hpp"
#include "selfverify/numeration.hpp"
#include "selfverify/ops.hpp"
#include "selfverify/query.hpp"
#include "selfverify/relations.hpp"
#include "selfverify/sequence.hpp"
#include "selfverify/teachers/adder.hpp"
#include "selfverify/teachers/eqfac.hpp"
#include "selfverify/teachers/eqrevfac.hpp"
#include "selfverify/teachers/inductive.hpp"
#include "selfverify/teachers/partial_sum.hpp"
#include "selfverify/teachers/period.hpp"
