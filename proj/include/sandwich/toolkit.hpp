// Umbrella header.

#ifndef SANDWICH_KIT_TOOLKIT_HPP_
#define SANDWICH_KIT_TOOLKIT_HPP_

#include "core.hpp"
#include "finite_semigroup.hpp"
#include "frame.hpp"
#include "green.hpp"
#include "rank.hpp"
#include "report.hpp"
#include "sandwich.hpp"
#include "subcategory.hpp"

#endif  // SANDWICH_KIT_TOOLKIT_HPP_
