#pragma once

#include "microtter/checker.hpp"
#include "microtter/clause.hpp"
#include "microtter/corpus.hpp"
#include "microtter/inference.hpp"
#include "microtter/options.hpp"
#include "microtter/oracle.hpp"
#include "microtter/order.hpp"
#include "microtter/parse.hpp"
#include "microtter/print.hpp"
#include "microtter/rewrite.hpp"
#include "microtter/saturation.hpp"
#include "microtter/store.hpp"
#include "microtter/term.hpp"
#include "microtter/unify.hpp"
