#pragma once

#include "grfstream/adwin.hpp"
#include "grfstream/data/dsv.hpp"
#include "grfstream/data/stream.hpp"
#include "grfstream/data/synthetic.hpp"
#include "grfstream/encoding.hpp"
#include "grfstream/eval.hpp"
#include "grfstream/harness/config.hpp"
#include "grfstream/harness/runner.hpp"
#include "grfstream/harness/suite.hpp"
#include "grfstream/learners.hpp"
#include "grfstream/sample.hpp"
