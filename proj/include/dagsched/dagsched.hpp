#pragma once

#include "dagsched/bench.hpp"
#include "dagsched/errors.hpp"
#include "dagsched/ga.hpp"
#include "dagsched/gantt.hpp"
#include "dagsched/io.hpp"
#include "dagsched/lsh.hpp"
#include "dagsched/oracle.hpp"
#include "dagsched/rng.hpp"
#include "dagsched/schedule.hpp"
#include "dagsched/taskgraph.hpp"
