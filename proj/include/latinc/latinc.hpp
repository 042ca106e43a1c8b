#pragma once

#include <latinc/bench.hpp>
#include <latinc/core.hpp>
#include <latinc/decompose.hpp>
#include <latinc/enumerate.hpp>
#include <latinc/incremental.hpp>
#include <latinc/io.hpp>
#include <latinc/minima.hpp>
#include <latinc/reduction.hpp>
