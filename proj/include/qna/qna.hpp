#pragma once

// Umbrella header for the whole library.

#include "qna/bitsets.hpp"
#include "qna/djclassifier.hpp"
#include "qna/errors.hpp"
#include "qna/grover.hpp"
#include "qna/json_io.hpp"
#include "qna/netmodel.hpp"
#include "qna/rng.hpp"
#include "qna/statevector.hpp"
