#pragma once

#include "erc20graph/bytes.hpp"
#include "erc20graph/dataset.hpp"
#include "erc20graph/errors.hpp"
#include "erc20graph/evaluation.hpp"
#include "erc20graph/features.hpp"
#include "erc20graph/graph.hpp"
#include "erc20graph/ingest.hpp"
#include "erc20graph/keccak.hpp"
#include "erc20graph/logistic.hpp"
#include "erc20graph/manifest.hpp"
#include "erc20graph/rng.hpp"
#include "erc20graph/rpc.hpp"
#include "erc20graph/synth.hpp"
#include "erc20graph/uint256.hpp"
