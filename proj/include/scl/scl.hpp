#pragma once

#include "scl/classify.hpp"
#include "scl/corpus.hpp"
#include "scl/curve.hpp"
#include "scl/degree.hpp"
#include "scl/error.hpp"
#include "scl/families.hpp"
#include "scl/frame.hpp"
#include "scl/hull.hpp"
#include "scl/json_io.hpp"
#include "scl/oracle.hpp"
#include "scl/quat.hpp"
#include "scl/rotation.hpp"
#include "scl/scan.hpp"
#include "scl/suite.hpp"
#include "scl/surgery.hpp"
#include "scl/svg.hpp"
#include "scl/vec.hpp"
