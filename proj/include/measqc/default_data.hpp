// Copyright 2026 The measqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Generated by tools/embed_data.py from data/. Do not edit.

#pragma once

#include <string_view>

namespace measqc::data {

// data/units.tsv
inline constexpr std::string_view kUnitLexicon = R"MEASQC(# measqc unit lexicon, format version 1
# surface<TAB>canonical<TAB>dimension
°C	degree Celsius	temperature
℃	degree Celsius	temperature
degC	degree Celsius	temperature
degrees Celsius	degree Celsius	temperature
degree Celsius	degree Celsius	temperature
celsius	degree Celsius	temperature
°F	degree Fahrenheit	temperature
degrees Fahrenheit	degree Fahrenheit	temperature
fahrenheit	degree Fahrenheit	temperature
K	kelvin	temperature
kelvin	kelvin	temperature
kelvins	kelvin	temperature
mK	millikelvin	temperature
m	metre	length
metre	metre	length
metres	metre	length
meter	metre	length
meters	metre	length
km	kilometre	length
kilometre	kilometre	length
kilometres	kilometre	length
kilometer	kilometre	length
kilometers	kilometre	length
cm	centimetre	length
centimetre	centimetre	length
centimetres	centimetre	length
centimeter	centimetre	length
centimeters	centimetre	length
mm	millimetre	length
millimetre	millimetre	length
millimetres	millimetre	length
millimeter	millimetre	length
millimeters	millimetre	length
µm	micrometre	length
μm	micrometre	length
um	micrometre	length
micrometre	micrometre	length
micrometres	micrometre	length
micrometer	micrometre	length
micrometers	micrometre	length
micron	micrometre	length
microns	micrometre	length
nm	nanometre	length
nanometre	nanometre	length
nanometres	nanometre	length
nanometer	nanometre	length
nanometers	nanometre	length
pm	picometre	length
picometre	picometre	length
picometres	picometre	length
Å	angstrom	length
angstrom	angstrom	length
angstroms	angstrom	length
ft	foot	length
feet	foot	length
foot	foot	length
inch	inch	length
inches	inch	length
mi	mile	length
mile	mile	length
miles	mile	length
m2	square metre	area
m²	square metre	area
square metres	square metre	area
square meters	square metre	area
cm2	square centimetre	area
cm²	square centimetre	area
mm2	square millimetre	area
mm²	square millimetre	area
km2	square kilometre	area
km²	square kilometre	area
ha	hectare	area
hectare	hectare	area
hectares	hectare	area
L	litre	volume
litre	litre	volume
litres	litre	volume
liter	litre	volume
liters	litre	volume
mL	millilitre	volume
ml	millilitre	volume
millilitre	millilitre	volume
millilitres	millilitre	volume
milliliter	millilitre	volume
milliliters	millilitre	volume
µL	microlitre	volume
μL	microlitre	volume
uL	microlitre	volume
microlitre	microlitre	volume
microlitres	microlitre	volume
microliter	microlitre	volume
microliters	microlitre	volume
nL	nanolitre	volume
dL	decilitre	volume
m3	cubic metre	volume
m³	cubic metre	volume
cubic metres	cubic metre	volume
cubic meters	cubic metre	volume
cm3	cubic centimetre	volume
cm³	cubic centimetre	volume
cc	cubic centimetre	volume
mm3	cubic millimetre	volume
mm³	cubic millimetre	volume
kg	kilogram	mass
kilogram	kilogram	mass
kilograms	kilogram	mass
g	gram	mass
gram	gram	mass
grams	gram	mass
mg	milligram	mass
milligram	milligram	mass
milligrams	milligram	mass
µg	microgram	mass
μg	microgram	mass
ug	microgram	mass
microgram	microgram	mass
micrograms	microgram	mass
ng	nanogram	mass
nanogram	nanogram	mass
nanograms	nanogram	mass
t	tonne	mass
tonne	tonne	mass
tonnes	tonne	mass
Da	dalton	mass
dalton	dalton	mass
daltons	dalton	mass
kDa	kilodalton	mass
lb	pound	mass
lbs	pound	mass
pound	pound	mass
pounds	pound	mass
s	second	time
sec	second	time
second	second	time
seconds	second	time
ms	millisecond	time
millisecond	millisecond	time
milliseconds	millisecond	time
µs	microsecond	time
μs	microsecond	time
microsecond	microsecond	time
microseconds	microsecond	time
ns	nanosecond	time
nanosecond	nanosecond	time
nanoseconds	nanosecond	time
ps	picosecond	time
picosecond	picosecond	time
picoseconds	picosecond	time
fs	femtosecond	time
femtosecond	femtosecond	time
femtoseconds	femtosecond	time
min	minute	time
mins	minute	time
minute	minute	time
minutes	minute	time
h	hour	time
hr	hour	time
hrs	hour	time
hour	hour	time
hours	hour	time
d	day	time
day	day	time
days	day	time
week	week	time
weeks	week	time
month	month	time
months	month	time
yr	year	time
yrs	year	time
year	year	time
years	year	time
Ma	million years	time
Myr	million years	time
ka	thousand years	time
kyr	thousand years	time
mol	mole	amount
mole	mole	amount
moles	mole	amount
mmol	millimole	amount
µmol	micromole	amount
μmol	micromole	amount
umol	micromole	amount
nmol	nanomole	amount
M	molar	concentration
molar	molar	concentration
mM	millimolar	concentration
millimolar	millimolar	concentration
µM	micromolar	concentration
μM	micromolar	concentration
uM	micromolar	concentration
micromolar	micromolar	concentration
nM	nanomolar	concentration
nanomolar	nanomolar	concentration
mg/L	milligram per litre	concentration
mg L−1	milligram per litre	concentration
mg l−1	milligram per litre	concentration
g/L	gram per litre	concentration
mg/mL	milligram per millilitre	concentration
µg/mL	microgram per millilitre	concentration
μg/mL	microgram per millilitre	concentration
mol/L	mole per litre	concentration
mg/kg	milligram per kilogram	ratio
g/mol	gram per mole	molar_mass
g mol−1	gram per mole	molar_mass
kg/mol	kilogram per mole	molar_mass
%	percent	ratio
wt%	weight percent	ratio
wt.%	weight percent	ratio
wt %	weight percent	ratio
at%	atomic percent	ratio
at.%	atomic percent	ratio
vol%	volume percent	ratio
vol.%	volume percent	ratio
mol%	mole percent	ratio
ppm	parts per million	ratio
ppb	parts per billion	ratio
‰	per mille	ratio
per mil	per mille	ratio
percent	percent	ratio
per cent	percent	ratio
Pa	pascal	pressure
pascal	pascal	pressure
pascals	pascal	pressure
kPa	kilopascal	pressure
MPa	megapascal	pressure
GPa	gigapascal	pressure
hPa	hectopascal	pressure
bar	bar	pressure
bars	bar	pressure
mbar	millibar	pressure
atm	atmosphere	pressure
atmosphere	atmosphere	pressure
atmospheres	atmosphere	pressure
Torr	torr	pressure
torr	torr	pressure
mTorr	millitorr	pressure
psi	pound per square inch	pressure
mmHg	millimetre of mercury	pressure
J	joule	energy
joule	joule	energy
joules	joule	energy
kJ	kilojoule	energy
MJ	megajoule	energy
mJ	millijoule	energy
eV	electronvolt	energy
electronvolt	electronvolt	energy
electronvolts	electronvolt	energy
keV	kiloelectronvolt	energy
MeV	megaelectronvolt	energy
GeV	gigaelectronvolt	energy
meV	millielectronvolt	energy
cal	calorie	energy
calorie	calorie	energy
calories	calorie	energy
kcal	kilocalorie	energy
kWh	kilowatt hour	energy
kJ/mol	kilojoule per mole	molar_energy
kJ mol−1	kilojoule per mole	molar_energy
kcal/mol	kilocalorie per mole	molar_energy
W	watt	power
watt	watt	power
watts	watt	power
kW	kilowatt	power
MW	megawatt	power
mW	milliwatt	power
µW	microwatt	power
μW	microwatt	power
W/m2	watt per square metre	irradiance
W m−2	watt per square metre	irradiance
W/m²	watt per square metre	irradiance
mW/cm2	milliwatt per square centimetre	irradiance
mW/cm²	milliwatt per square centimetre	irradiance
Hz	hertz	frequency
hertz	hertz	frequency
kHz	kilohertz	frequency
MHz	megahertz	frequency
GHz	gigahertz	frequency
THz	terahertz	frequency
rpm	revolution per minute	frequency
V	volt	voltage
volt	volt	voltage
volts	volt	voltage
mV	millivolt	voltage
kV	kilovolt	voltage
µV	microvolt	voltage
μV	microvolt	voltage
A	ampere	current
ampere	ampere	current
amperes	ampere	current
amp	ampere	current
amps	ampere	current
mA	milliampere	current
µA	microampere	current
μA	microampere	current
nA	nanoampere	current
Ω	ohm	resistance
ohm	ohm	resistance
ohms	ohm	resistance
kΩ	kiloohm	resistance
MΩ	megaohm	resistance
siemens	siemens	conductance
mS	millisiemens	conductance
µS	microsiemens	conductance
μS	microsiemens	conductance
mS/cm	millisiemens per centimetre	conductivity
C	coulomb	charge
coulomb	coulomb	charge
coulombs	coulomb	charge
mAh	milliampere hour	charge
F	farad	capacitance
farad	farad	capacitance
farads	farad	capacitance
µF	microfarad	capacitance
μF	microfarad	capacitance
pF	picofarad	capacitance
nF	nanofarad	capacitance
H	henry	inductance
henry	henry	inductance
T	tesla	magnetic_field
tesla	tesla	magnetic_field
mT	millitesla	magnetic_field
Oe	oersted	magnetic_field
oersted	oersted	magnetic_field
G	gauss	magnetic_field
gauss	gauss	magnetic_field
N	newton	force
newton	newton	force
newtons	newton	force
kN	kilonewton	force
mN	millinewton	force
Nm	newton metre	torque
N m	newton metre	torque
N·m	newton metre	torque
Pa s	pascal second	viscosity
Pa·s	pascal second	viscosity
mPa s	millipascal second	viscosity
mPa·s	millipascal second	viscosity
cP	centipoise	viscosity
m/s	metre per second	velocity
m s−1	metre per second	velocity
m s-1	metre per second	velocity
km/h	kilometre per hour	velocity
kph	kilometre per hour	velocity
cm/s	centimetre per second	velocity
mm/s	millimetre per second	velocity
mph	mile per hour	velocity
m/s2	metre per second squared	acceleration
m/s²	metre per second squared	acceleration
m s−2	metre per second squared	acceleration
mL/min	millilitre per minute	flow_rate
ml/min	millilitre per minute	flow_rate
mL min−1	millilitre per minute	flow_rate
L/min	litre per minute	flow_rate
l/min	litre per minute	flow_rate
µL/min	microlitre per minute	flow_rate
μL/min	microlitre per minute	flow_rate
sccm	standard cubic centimetre per minute	flow_rate
°C/min	degree per minute	heating_rate
K/min	degree per minute	heating_rate
g/cm3	gram per cubic centimetre	density
g/cm³	gram per cubic centimetre	density
g cm−3	gram per cubic centimetre	density
kg/m3	kilogram per cubic metre	density
kg/m³	kilogram per cubic metre	density
kg m−3	kilogram per cubic metre	density
g/mL	gram per millilitre	density
cm−3	per cubic centimetre	number_density
cm-3	per cubic centimetre	number_density
°	degree	angle
deg	degree	angle
degree	degree	angle
degrees	degree	angle
rad	radian	angle
radian	radian	angle
radians	radian	angle
mrad	milliradian	angle
Bq	becquerel	radioactivity
becquerel	becquerel	radioactivity
Ci	curie	radioactivity
curie	curie	radioactivity
Gy	gray	absorbed_dose
gray	gray	absorbed_dose
Sv	sievert	dose_equivalent
sievert	sievert	dose_equivalent
mSv	millisievert	dose_equivalent
dB	decibel	level
decibel	decibel	level
decibels	decibel	level
pH	pH	acidity
cd	candela	luminous_intensity
candela	candela	luminous_intensity
lm	lumen	luminous_flux
lumen	lumen	luminous_flux
lumens	lumen	luminous_flux
lx	lux	illuminance
lux	lux	illuminance
bp	base pair	sequence_length
base pairs	base pair	sequence_length
kb	kilobase pair	sequence_length
kbp	kilobase pair	sequence_length
Mb	megabase pair	sequence_length
GB	gigabyte	data
gigabyte	gigabyte	data
gigabytes	gigabyte	data
MB	megabyte	data
megabyte	megabyte	data
megabytes	megabyte	data
cells/mL	cell per millilitre	count_density
mg/day	milligram per day	dose_rate
fold	fold	ratio
times	times	ratio
)MEASQC";

// data/scope_patterns.tsv
inline constexpr std::string_view kScopePatterns = R"MEASQC(# measqc out-of-scope pattern table, format version 1
# id<TAB>flags<TAB>regex<TAB>positive example<TAB>negative example<TAB>description
# flags: i = case-insensitive, u = exempt when the captured letters form a known unit
figure-citation	i	\b(?:fig(?:ure)?s?)\.?\s*\d+[a-z]?\b	Fig. 4	798 °C	figure label such as Fig. 4 or Figure 2b
table-citation	i	\b(?:tables?|tab\.)\s*\d+[a-z]?\b	Table 2	2 tablespoons	table label such as Table 2
equation-citation	i	\b(?:eqs?\.|equations?)\s*\(?\d+[a-z]?\)?	Eq. 3	3 equal parts	equation reference such as Eq. 3 or Equation (2)
section-citation	i	(?:\bsections?|\bsec\.|§)\s*\d+(?:\.\d+)*	Section 5	5 sections	section reference such as Section 5 or § 2.1
reference-citation	i	\b(?:refs?\.|references?)\s*\d+	Ref. 12	12 references	bibliography reference such as Ref. 12
reference-numeral		\[\s*\d+(?:\s*(?:,|-|–)\s*\d+)*\s*\]	[12]	[up to 12 mg]	bracketed citation numeral such as [12] or [3, 4]
digit-in-nomenclature	u	(?:^|[^A-Za-z0-9.])(\d+[A-Z][A-Za-z]*)(?![A-Za-z0-9])	4S RNA	300K	digit fused to an uppercase name, as in 4S RNA or 16S rRNA
)MEASQC";

// data/templates/p_aug.txt
inline constexpr std::string_view kAugTemplate = R"MEASQC(Instruction:
Extract every quantity mentioned in the input text. Reason in six sections, in this order and each exactly once:
ARABIC-QUANTITY, NUMERIC-QUANTITY, TIME-QUANTITY, CHANGE-QUANTITY, FORMULA-QUANTITY, CONCLUSION.

ARABIC-QUANTITY covers values written with digits, NUMERIC-QUANTITY values written as words, TIME-QUANTITY durations and points in time, CHANGE-QUANTITY increases and decreases, FORMULA-QUANTITY values stated inside formulas or equations. CONCLUSION holds only the final answer.

Layout:
<ARABIC-QUANTITY> reasoning </ARABIC-QUANTITY>
<NUMERIC-QUANTITY> reasoning </NUMERIC-QUANTITY>
<TIME-QUANTITY> reasoning </TIME-QUANTITY>
<CHANGE-QUANTITY> reasoning </CHANGE-QUANTITY>
<FORMULA-QUANTITY> reasoning </FORMULA-QUANTITY>
<CONCLUSION>
one quantity per line: surface<TAB>unit<TAB>modifiers
</CONCLUSION>

The surface is copied verbatim from the input, including cue words such as "up to" or "approximately". Leave the unit empty for unitless quantities. Modifiers are comma-separated MeasEval modifier names (IsRange, IsApproximate, IsCount, IsList, IsMean, IsMedian, HasTolerance).

The candidates below were found by a rule-based quantity parser. They may contain false positives such as figure labels or names that contain digits; verify each one against the text and drop those that are not quantities.

Input text:
{TEXT}

The reference answer from quantulum:
{ANCHORS}
)MEASQC";

// data/templates/p_trace.txt
inline constexpr std::string_view kTraceTemplate = R"MEASQC(Instruction:
Extract every quantity mentioned in the input text. Reason in six sections, in this order and each exactly once:
ARABIC-QUANTITY, NUMERIC-QUANTITY, TIME-QUANTITY, CHANGE-QUANTITY, FORMULA-QUANTITY, CONCLUSION.

ARABIC-QUANTITY covers values written with digits, NUMERIC-QUANTITY values written as words, TIME-QUANTITY durations and points in time, CHANGE-QUANTITY increases and decreases, FORMULA-QUANTITY values stated inside formulas or equations. CONCLUSION holds only the final answer.

Layout:
<ARABIC-QUANTITY> reasoning </ARABIC-QUANTITY>
<NUMERIC-QUANTITY> reasoning </NUMERIC-QUANTITY>
<TIME-QUANTITY> reasoning </TIME-QUANTITY>
<CHANGE-QUANTITY> reasoning </CHANGE-QUANTITY>
<FORMULA-QUANTITY> reasoning </FORMULA-QUANTITY>
<CONCLUSION>
one quantity per line: surface<TAB>unit<TAB>modifiers
</CONCLUSION>

The surface is copied verbatim from the input, including cue words such as "up to" or "approximately". Leave the unit empty for unitless quantities. Modifiers are comma-separated MeasEval modifier names (IsRange, IsApproximate, IsCount, IsList, IsMean, IsMedian, HasTolerance).

The gold answers are listed below. Write reasoning that arrives at exactly these rows; the CONCLUSION must reproduce them without additions or omissions.

Input text:
{TEXT}

The gold answers:
{GOLD}
)MEASQC";

}  // namespace measqc::data
