#pragma once

#include "selkey/utf8.hpp"
#include "selkey/text_ingest.hpp"
#include "selkey/cooc_network.hpp"
#include "selkey/network_measures.hpp"
#include "selkey/selectivity_extraction.hpp"
#include "selkey/eval_harness.hpp"
#include "selkey/corpus_run.hpp"
