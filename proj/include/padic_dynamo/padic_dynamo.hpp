#pragma once

#include "finite_field.hpp"
#include "indifferent.hpp"
#include "lattes.hpp"
#include "newton_polygon.hpp"
#include "pcf_family.hpp"
#include "poly.hpp"
#include "ratmap.hpp"
#include "scalar.hpp"
#include "series.hpp"
