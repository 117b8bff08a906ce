#pragma once

#include "cesaro/binomial.hpp"
#include "cesaro/caps.hpp"
#include "cesaro/cesaro_scan.hpp"
#include "cesaro/cylinder.hpp"
#include "cesaro/errors.hpp"
#include "cesaro/group.hpp"
#include "cesaro/measure.hpp"
#include "cesaro/pushforward.hpp"
#include "cesaro/regen.hpp"
#include "cesaro/renewal.hpp"
#include "cesaro/shift.hpp"
#include "cesaro/verification.hpp"
