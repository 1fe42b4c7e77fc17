#!/usr/bin/env python3
"""Generates data/lexicon.tsv (token<TAB>POS) for the default rule tagger.

Base forms are listed below; regular inflections are expanded here so the
shipped file needs no morphology at lookup time. Re-run after editing:

    python3 tools/gen_lexicon.py > data/lexicon.tsv
"""

import sys

DET = """a an the this that these those some any each every another no all both
either neither his their its my your our whose several many few much more most
such what which half""".split()

# Possessive "her" is tagged DET; the tagger re-tags it PRON when no noun follows.
DET += ["her"]

PRON = """i you he she it we they me him us them myself yourself himself herself
itself ourselves themselves someone somebody something anyone anybody anything
everyone everybody everything nobody nothing one ones who whom whoever mine
yours hers ours theirs""".split()

ADP = """in on at with into onto from to of by for over under inside beside
besides behind near between through across along around above below beneath
against towards toward within without upon off out up down about after before
during among amongst beyond past via throughout underneath atop outside
alongside amid opposite like unlike despite except per than""".split()

AUX = """is are was were be been being am has have had having does do did doing
can could will would may might shall should must 's 're 've 'm 'll 'd ca wo""".split()

OTHER = """and or but nor so yet then while as because although though if when
whereas whether not also very just still too really quite almost only even
again already always never often sometimes here there now today carefully
slowly quickly gently together away back around closely firmly well
currently partially visible likely possibly seemingly apparently n't
please yes hi hello oh""".split()

NUM = """two three four five six seven eight nine ten eleven twelve twenty hundred
first second third last next""".split()

ADJ = """red orange yellow green blue purple pink brown black white gray grey
silver golden gold beige dark light bright colorful colourful transparent clear
large big small little tiny huge giant long short tall wide narrow thick thin
round square rectangular flat deep shallow hot cold warm cool fresh raw cooked
frozen dry wet clean dirty new old young elderly empty full open closed sharp
dull soft hard smooth rough heavy light wooden metal metallic plastic glass
ceramic paper leather cotton woolen silk rubber steel iron stainless nonstick
electric digital portable different various other same similar several whole
entire main small-sized medium-sized sliced chopped diced minced grated peeled
mashed fried baked boiled grilled roasted melted whipped beaten mixed
homemade handmade delicious tasty sweet sour salty spicy bitter creamy crispy
crunchy juicy sticky fluffy shiny glossy matte patterned striped floral plain
simple fancy decorative beautiful pretty nice good bad great fine careful
busy ready certain specific particular special favorite favourite own
left right front rear top bottom upper lower middle central inner outer
outdoor indoor natural artificial organic healthy leafy ripe green-colored
blond blonde curly straight bald bearded male female adult
professional amateur elegant modern traditional vintage antique rustic
cardboard glassy fabric knitted woven printed painted colored coloured
pale vivid neon navy maroon teal turquoise violet lavender cream ivory tan
khaki olive crimson scarlet mint peach coral magenta cyan amber bronze copper
circular oval triangular cylindrical curved pointed hollow solid liquid
frothy foamy bubbly smoky steamy greasy oily buttery cheesy garlicky
tiled marble granite concrete brick stone glass-topped vertical horizontal
upright tilted inverted mini miniature compact sturdy fragile delicate
visible invisible nearby distant close far extra additional final initial""".split()

NOUN = """person people man men woman women child children kid kids boy girl baby
toddler teenager adult guy lady gentleman chef cook baker worker artist player
hand hands finger fingers thumb arm arms wrist elbow shoulder head face hair
eye eyes nose mouth lip lips ear ears neck leg legs foot feet knee body back
chest skin nail nails palm fist beard mustache glove gloves apron shirt
t-shirt jacket coat sweater jumper hoodie dress skirt pants jeans shorts hat cap
scarf shoe shoes boot boots sock socks uniform mask glasses sunglasses watch
ring bracelet necklace earring belt bag backpack purse wallet pocket sleeve
collar button zipper
kitchen room table counter countertop desk shelf shelves cabinet cupboard
drawer sink faucet tap stove oven microwave fridge refrigerator freezer
dishwasher toaster blender mixer grinder kettle pot pan skillet wok saucepan
lid tray sheet rack grill griddle burner fire flame smoke steam
bowl plate dish dishes platter saucer cup mug glass glasses jar bottle can
tin container box carton jug pitcher vase bucket basin tub teapot thermos
flask canister packet package pack wrapper bag foil wrap film
spoon spoons fork forks knife knives spatula ladle whisk tongs peeler grater
scissors shears cutter cutters tool tools board cutting-board rolling-pin pin
brush strainer sieve colander funnel scoop scale timer thermometer opener
skewer stick sticks chopsticks napkin towel cloth rag sponge mat tablecloth
food meal dish snack breakfast lunch dinner dessert ingredient ingredients
mixture batter dough paste sauce soup stew salad sandwich burger pizza pasta
noodles rice bread toast cake cookie cookies pie pastry muffin cupcake
biscuit cracker chocolate candy sugar salt pepper spice spices herb herbs
flour butter oil vinegar milk cream cheese yogurt egg eggs meat beef pork
chicken fish shrimp bacon sausage ham steak fillet tofu bean beans lentils
vegetable vegetables fruit fruits apple apples banana bananas orange oranges
lemon lemons lime limes grape grapes strawberry strawberries berry berries
cherry cherries peach pear pineapple mango melon watermelon coconut avocado
tomato tomatoes potato potatoes onion onions garlic ginger carrot carrots
celery cucumber lettuce cabbage spinach broccoli cauliflower pea peas corn
mushroom mushrooms eggplant zucchini squash pumpkin radish beet leaf leaves
nut nuts almond almonds walnut peanut seed seeds juice water tea coffee
beverage drink drinks liquid wine beer cocktail smoothie syrup honey jam
dressing marinade topping filling frosting icing glaze crust slice slices
piece pieces chunk chunks bit bits portion layer layers strip strips cube
cubes ball balls roll rolls loaf heap pile bunch handful pinch drop drops
wood paper papers cardboard plastic metal fabric yarn thread needle needles
fabric string rope wire tape glue paint paints canvas pencil pencils pen pens
marker markers crayon crayons eraser ruler notebook book books page pages
card cards envelope craft crafts project projects model design pattern
picture pictures photo image images drawing painting frame frames sticker
stickers ribbon bead beads button buttons sequin glitter clay putty
hammer nail screw screws screwdriver wrench drill saw pliers bolt nut
blade handle lever knob switch cable cord plug socket battery machine
device engine motor pump hose pipe valve tube tank filter fan heater
computer laptop keyboard mouse screen monitor phone smartphone tablet
camera tripod microphone speaker headphones remote controller console
television tv radio lamp light lights bulb candle clock mirror window door
wall floor ceiling roof stairs step steps corner edge side surface top
bottom middle center centre front background foreground area space spot
place location scene view shot video clip frame moment time
house home building garage garden yard backyard lawn field farm street
road sidewalk car truck bike bicycle motorcycle boat wheel tire seat
chair sofa couch bed pillow blanket sheet carpet rug curtain
plant plants flower flowers tree trees grass soil dirt sand rock rocks stone
stones pot planter branch branches root roots bush bushes
dog dogs cat cats bird birds horse cow animal animals pet pets fish
toy toys game games doll puzzle instrument guitar piano violin drum
ball bat racket net goal court
hair-dryer comb hairbrush razor toothbrush toothpaste soap shampoo lotion
makeup lipstick brush brushes polish bottle cream powder
iron ironing-board hanger basket laundry clothes clothing garment
bag bags sack bin trash garbage waste recycling
cleaner detergent spray sprayer bucket mop broom vacuum dustpan duster
object objects item items thing things stuff material materials product
products equipment appliance appliances utensil utensils gadget kit set
pair pairs group row line circle shape shapes color colors colour colours
piece edge end tip part parts half section
process way method recipe step task job work action activity demonstration
tutorial lesson instruction instructions technique
motion movement position direction
water-bottle
person's man's woman's
accessory account acid address advice afternoon age air airplane alarm album
alcohol alley aluminum ambulance amount angle ankle answer ant antenna apartment
apricot aquarium arch arena army arrow art article ash aspect attic audience aunt
author avenue axe axis baby-bottle bacon-strip badge bakery balcony balloon bamboo
band bandage bank banner bar barbecue barn barrel base basement bath bathroom
bathtub beach beak beam bear bedroom bee beef-patty beetle bell bench bib bin
biscuit-dough blender-jar blind block blossom blouse blueberry board-game bone
bonnet bookcase bookshelf boot-lace bouquet bow box-cutter bracket brain brake
brass bread-crumbs breadcrumbs brick bride bridge bristle brother bubble bud
buffet bulb bull bumper bun bundle burrito butcher butterfly cab cabin cable-tie
cafe cage calendar calf camel can-opener canal candy-bar cane cannon canoe cap
capsule captain caramel carriage cart carton case cash cashew casserole castle
catalog caterpillar cauldron cave cell cellar cement cereal certificate chain
chair-leg chalk chalkboard champagne channel chapter charcoal chart cheek
cheesecake chestnut chick chili chimney chin chip chips chisel cigarette
cinnamon city clamp classroom claw cliff client climber cloak closet cloud clove
club coal coast coaster cocoa cod coffee-maker coil coin collar-bone comb comic
compass concrete cone container-lid cookie-cutter cooker cookware cord cork
corkscrew costume cottage cotton-ball couch-cushion counter-top countryside
couple coupon cousin crab cradle crane crate crayfish creature crib crow crowd
crown crumb crystal cucumber-slice cuff cupcake-liner curb curtain-rod cushion
customer cutlery cutting-mat cycle dad dairy daisy dam dancer dart dashboard
date daughter deck deer dentist diamond diaper diary dice dime diner dinosaur
dirt-bike disc disk dishcloth dispenser ditch diver dock doctor dolphin donkey
donut doorbell doorknob dough-ball dove dragon drain drainer drawer-handle dress-shirt
dresser driver drop-cloth drum-stick duck dumbbell dumpling dumpster dune dust-pan
eagle earth easel eel elbow-pad elephant elevator embroidery engineer entrance
envelope-flap eraser-head escalator estate exhibit eyebrow eyelash fabric-scrap
factory fairy family farmer faucet-handle feather fence fern ferry fiber fig
figure file-folder finger-nail fingertip firefighter fireplace firework fist-bump
flag flake flashlight fleece flesh flight flipper floor-mat flooring flour-bag
flower-pot flute foam fog folder fork-tip fountain fox fragment freezer-bag fries
frog frosting-bag fry-pan frying-pan fuel fur furniture gallery gallon garage-door
garlic-clove gasoline gate gauge gear gel gem ghost gift gin giraffe glass-jar
glaze-brush globe glue-gun goat goggles golf gown grain grandfather grandmother
grape-vine graph grass-blade gravel gravy grocery ground guard guest guitar-string
gum gutter gym hair-clip haircut hairdresser hall hallway hamburger hammock
handbag handkerchief handrail harbor hardware harness harp hatch hay headband
heart hedge heel helicopter helmet hen highway hill hinge hip hole holder hood
hoof hoop horn hospital host hotel hourglass husband hut ice ice-cream icicle
icon igloo ink insect interior island ivy jacket-sleeve jaguar jail jar-lid
jeep jelly jellyfish jersey jet jewel jewelry journal judge jungle kangaroo
ketchup key keychain kid-scissors kiln king kiosk kitten kiwi knee-pad knot
koala ladder lake lamb landscape lane lantern lap lawnmower leash lemonade
lens leopard letter lettuce-leaf library lid-handle lighter lily limb lion
lipstick-tube lizard lobster lock locker log lollipop lotion-bottle luggage
lumber machine-part magazine magnet mailbox mall mango-slice mannequin map
maple marble-slab market marshmallow mattress mayonnaise meadow meatball
mechanic medal medicine melon-ball menu mermaid mesh message microscope milkshake
mineral mirror-frame mitten mitt mixer-bowl mixing-bowl mobile mold-tray monkey
moon mop-head mosquito moss moth motorbike mountain mousepad mouth-guard mud
mug-handle muscle museum music mussel mustard nail-polish napkin-ring neighbor
nest newspaper nickel noodle notebook-page notepad nurse oar oatmeal ocean
octopus office olive-oil omelet omelette onion-ring orchard organ ornament ostrich
otter outfit oven-mitt owl ox oyster pad paddle padlock pail paintbrush palette
pancake panda pane panel pantry paper-towel parcel park parrot party passenger
passport pastry-bag patch path patio paw peacock pearl pebble pedal pelican
penguin pepper-mill perfume pet-food pharmacy piano-key pickle picnic pier pig
pigeon pillar pillowcase pilot pipette pitchfork placemat planet plank plaster
plate-rack platform playground pliers-handle plum plumber pocket-knife pole
police pond pony pool popcorn porch porridge postcard poster pot-holder pottery
pouch powder-puff prawn pretzel prince princess prism prize pudding puddle puppet
puppy purse-strap pyramid quarter queen quilt rabbit raccoon rail railing rain
rainbow raisin ram ramp raspberry rat receipt refrigerator-door reindeer
restaurant ribbon-spool rice-cooker rim river robe robot rocket rod roller
rolling-pin rooster rope-end rose router rubber-band ruler-edge sail sailor
salami salmon sandal sauce-pan saucepan-lid saxophone scaffold scarecrow school
scientist scooter screen-door sculpture sea seal-ring seashell seatbelt shack
shade shadow shaker shark shed shell shelter shield ship shoelace shop shore
shovel shower shutter sibling sign signal silk-scarf silverware singer sister
skate skateboard skeleton ski skirt-hem skull sky skyscraper sled sleeve-cuff
slipper slope snail snake sneaker snow snowflake snowman soda sofa-cushion
soldier sole son soup-pot soy spade spaghetti sparrow spatula-handle spider
spine spool spout spring sprinkles sprout squirrel stable stadium stage stamp-pad
stapler star station statue steak-knife stem stepladder stereo stick-figure
stocking stomach stool storm stove-top straw stream student studio submarine
suit suitcase sun sunflower supermarket surfboard swan sweatshirt swing
sword syringe t-bone table-leg tablespoon tack tag tail tape-measure target
taxi teacher teaspoon teddy teeth telescope temple tent terrace thermos-lid thigh
throat thumbtack ticket tiger tile toaster-oven toe toilet tomato-sauce tongue
toolbox tooth toothpick torch tortilla tower town track tractor traffic trailer
train trampoline trash-can treasure trench tripod-leg trolley trophy trough
trumpet trunk tshirt tulip tuna tunnel turkey turtle tweezers twig umbrella
uncle underwear unicorn vacuum-cleaner van varnish vegetable-peeler vehicle
vest village vine violin-bow visor volcano waffle wagon waist waiter waitress
wallpaper wand wardrobe warehouse washcloth wasp watering-can wax weed whale
wheat wheelbarrow whiskey whistle wick wife wig windowsill wing wire-rack wolf
wood-block wool workbench workshop worm wrench-handle wristband yacht yarn-ball
yolk zebra zipper-pull zoo
""".split()

VERB_IRREGULAR = {
    # base: (3sg, past, past participle, gerund)
    "be": ("is", "was", "been", "being"),
    "have": ("has", "had", "had", "having"),
    "do": ("does", "did", "done", "doing"),
    "go": ("goes", "went", "gone", "going"),
    "make": ("makes", "made", "made", "making"),
    "take": ("takes", "took", "taken", "taking"),
    "give": ("gives", "gave", "given", "giving"),
    "get": ("gets", "got", "gotten", "getting"),
    "put": ("puts", "put", "put", "putting"),
    "cut": ("cuts", "cut", "cut", "cutting"),
    "set": ("sets", "set", "set", "setting"),
    "hold": ("holds", "held", "held", "holding"),
    "see": ("sees", "saw", "seen", "seeing"),
    "show": ("shows", "showed", "shown", "showing"),
    "sit": ("sits", "sat", "sat", "sitting"),
    "stand": ("stands", "stood", "stood", "standing"),
    "lie": ("lies", "lay", "lain", "lying"),
    "lay": ("lays", "laid", "laid", "laying"),
    "eat": ("eats", "ate", "eaten", "eating"),
    "drink": ("drinks", "drank", "drunk", "drinking"),
    "write": ("writes", "wrote", "written", "writing"),
    "draw": ("draws", "drew", "drawn", "drawing"),
    "run": ("runs", "ran", "run", "running"),
    "swim": ("swims", "swam", "swum", "swimming"),
    "throw": ("throws", "threw", "thrown", "throwing"),
    "break": ("breaks", "broke", "broken", "breaking"),
    "shake": ("shakes", "shook", "shaken", "shaking"),
    "spread": ("spreads", "spread", "spread", "spreading"),
    "split": ("splits", "split", "split", "splitting"),
    "spin": ("spins", "spun", "spun", "spinning"),
    "grind": ("grinds", "ground", "ground", "grinding"),
    "beat": ("beats", "beat", "beaten", "beating"),
    "bring": ("brings", "brought", "brought", "bringing"),
    "buy": ("buys", "bought", "bought", "buying"),
    "catch": ("catches", "caught", "caught", "catching"),
    "dig": ("digs", "dug", "dug", "digging"),
    "feed": ("feeds", "fed", "fed", "feeding"),
    "find": ("finds", "found", "found", "finding"),
    "fly": ("flies", "flew", "flown", "flying"),
    "freeze": ("freezes", "froze", "frozen", "freezing"),
    "grow": ("grows", "grew", "grown", "growing"),
    "hang": ("hangs", "hung", "hung", "hanging"),
    "hide": ("hides", "hid", "hidden", "hiding"),
    "keep": ("keeps", "kept", "kept", "keeping"),
    "know": ("knows", "knew", "known", "knowing"),
    "leave": ("leaves", "left", "left", "leaving"),
    "lead": ("leads", "led", "led", "leading"),
    "lift": ("lifts", "lifted", "lifted", "lifting"),
    "let": ("lets", "let", "let", "letting"),
    "light": ("lights", "lit", "lit", "lighting"),
    "lose": ("loses", "lost", "lost", "losing"),
    "meet": ("meets", "met", "met", "meeting"),
    "pay": ("pays", "paid", "paid", "paying"),
    "read": ("reads", "read", "read", "reading"),
    "ride": ("rides", "rode", "ridden", "riding"),
    "ring": ("rings", "rang", "rung", "ringing"),
    "rise": ("rises", "rose", "risen", "rising"),
    "say": ("says", "said", "said", "saying"),
    "sell": ("sells", "sold", "sold", "selling"),
    "send": ("sends", "sent", "sent", "sending"),
    "sew": ("sews", "sewed", "sewn", "sewing"),
    "shine": ("shines", "shone", "shone", "shining"),
    "shoot": ("shoots", "shot", "shot", "shooting"),
    "shut": ("shuts", "shut", "shut", "shutting"),
    "sing": ("sings", "sang", "sung", "singing"),
    "sink": ("sinks", "sank", "sunk", "sinking"),
    "sleep": ("sleeps", "slept", "slept", "sleeping"),
    "slide": ("slides", "slid", "slid", "sliding"),
    "speak": ("speaks", "spoke", "spoken", "speaking"),
    "spend": ("spends", "spent", "spent", "spending"),
    "stick": ("sticks", "stuck", "stuck", "sticking"),
    "sting": ("stings", "stung", "stung", "stinging"),
    "strike": ("strikes", "struck", "struck", "striking"),
    "sweep": ("sweeps", "swept", "swept", "sweeping"),
    "swing": ("swings", "swung", "swung", "swinging"),
    "teach": ("teaches", "taught", "taught", "teaching"),
    "tear": ("tears", "tore", "torn", "tearing"),
    "tell": ("tells", "told", "told", "telling"),
    "think": ("thinks", "thought", "thought", "thinking"),
    "wake": ("wakes", "woke", "woken", "waking"),
    "wear": ("wears", "wore", "worn", "wearing"),
    "win": ("wins", "won", "won", "winning"),
    "wind": ("winds", "wound", "wound", "winding"),
    "wring": ("wrings", "wrung", "wrung", "wringing"),
    "begin": ("begins", "began", "begun", "beginning"),
    "bend": ("bends", "bent", "bent", "bending"),
    "bite": ("bites", "bit", "bitten", "biting"),
    "blow": ("blows", "blew", "blown", "blowing"),
    "build": ("builds", "built", "built", "building"),
    "burn": ("burns", "burnt", "burnt", "burning"),
    "choose": ("chooses", "chose", "chosen", "choosing"),
    "come": ("comes", "came", "come", "coming"),
    "deal": ("deals", "dealt", "dealt", "dealing"),
    "fall": ("falls", "fell", "fallen", "falling"),
    "feel": ("feels", "felt", "felt", "feeling"),
    "fight": ("fights", "fought", "fought", "fighting"),
    "fit": ("fits", "fit", "fit", "fitting"),
    "forget": ("forgets", "forgot", "forgotten", "forgetting"),
    "hit": ("hits", "hit", "hit", "hitting"),
    "hear": ("hears", "heard", "heard", "hearing"),
    "melt": ("melts", "melted", "molten", "melting"),
    "mean": ("means", "meant", "meant", "meaning"),
    "quit": ("quits", "quit", "quit", "quitting"),
    "seek": ("seeks", "sought", "sought", "seeking"),
    "shed": ("sheds", "shed", "shed", "shedding"),
    "shrink": ("shrinks", "shrank", "shrunk", "shrinking"),
    "slit": ("slits", "slit", "slit", "slitting"),
    "spill": ("spills", "spilt", "spilt", "spilling"),
    "steal": ("steals", "stole", "stolen", "stealing"),
    "understand": ("understands", "understood", "understood", "understanding"),
    "undo": ("undoes", "undid", "undone", "undoing"),
    "unwind": ("unwinds", "unwound", "unwound", "unwinding"),
    "weave": ("weaves", "wove", "woven", "weaving"),
}

VERB_REGULAR = """add adjust aim allow apply arrange assemble attach bake balance
blend boil brush bury butter calibrate carry carve check chop clap clean clear
climb clip close coat collect color colour combine compare connect contain
continue cook cool cover crack crease create crimp crumble crush cry cube curl
dance decorate demonstrate describe dice dip direct display dissolve divide
drag drain drape dress drizzle drop dry dust empty enjoy examine explain fill
finish fix flatten flip float flour fold follow form frost fry garnish gather
glaze glue grab grasp grate grease grill grip guide hammer hand handle heat
help hook hug hurry inspect insert install iron jump kick kiss knead knit knock
label lace laugh lean lick line list listen load look loosen lower marinate
mark mash massage measure mince mix mold mould move nail note observe oil
open operate order organize organise pack paint pair pass paste pat peel
perform pick pierce pin place plant play plug point poke polish pop position
pound pour prepare present press prick print pull pump punch push raise rake
reach record release remove repair repeat replace rest rinse rip roast roll
rotate rub sand saute scatter scoop scrape scratch screw scrub seal season
secure select separate serve shape share shave shift shred sieve sift sketch
skewer slice slip smash smell smile smooth snap soak sort spice spray
sprinkle squash squeeze stack stain stamp start steam step stir stitch stop
store strain stretch stuff style support switch talk tap taste test thread
tie tighten tilt tip toast toss touch trace trim try turn twist type unfold
unpack unscrew unwrap use vacuum walk wash watch water wave weigh whip whisk
wipe wrap zip lean hold position seem appear wait work clamp cement solder
weld bolt drill saw file buff chisel mop sweep dust vacuum spray rinse drain
fillet debone skin pit core hull zest juice puree brown sear simmer poach
braid comb curl part rinse shampoo condition trim spray moisturize apply
accept achieve act adapt admire advance affect agree align alter analyze
announce annoy answer approach approve argue arrive ask assist attack attempt
attend avoid bang bathe beg behave blink block blot boast bolt bounce bow
brake breathe bump buzz calculate call calm camp care cause celebrate chase
cheer chew circle claim clutch coil comb comfort complete concentrate confirm
consider construct copy correct cough count crawl crochet cross crowd cure
cycle damage dangle dare decide delight deliver depend design destroy detect
develop dial disappear discover dislike doubt drip drum dump earn educate
embroider employ encourage end enter escape establish exercise exist expand
expect explore extend face fade fail fancy fasten fear fence fetch film fire
fizz flash flick flood flow flutter fold force frame frighten fuel gaze glide
glow gnaw grin groan guard guess hammer harm hate haunt heal heap hover hunt
identify ignore imagine impress improve include increase influence inform
inject injure instruct intend interest interrupt introduce invent invite
itch jog join joke judge juggle kneel knot land last launch learn level lick
lie lock long love manage march marry match matter melt mend milk mine miss
moan mount mourn mug multiply murder name need nest nod number obey object
obtain occur offer own paddle park part pause peck pedal peep phone pinch
plan please plough plow pray preach prefer preserve pretend prevent produce
promise protect provide puncture punish purr question queue race radiate rain
reduce refuse regret reign reject rejoice relax rely remain remember remind
request rescue retire return reverse rhyme risk rob rock rule rush sail satisfy
save scare scream screech search settle shade share shelter shiver shock shop
shrug sigh sign signal sin sip ski skip slap slow smoke snatch sneeze sniff
snore snow soothe sound spare spark sparkle spell spoil spot sprout squeak
squeal stare steer stink stomp strap stroke succeed suck suffer suggest
supply suppose surprise surround suspect suspend swap swell tame tease
telephone tempt terrify thank thaw tick tickle time tire tour tow train
transport trap travel treat tremble trick trip trot trouble trust tug tumble
unite unlock vanish visit wail wander want warm warn waste whine whirl whisper
whistle wink wish wobble wonder worry wrestle yawn yell zoom
""".split()

# Base forms that are much more often nouns in captions.
NOUN_FIRST = {"hand", "water", "oil", "flour", "butter", "color", "colour", "iron",
              "nail", "glue", "paint", "paste", "plant", "bolt", "file", "saw",
              "juice", "skin", "core", "pit", "stamp", "label", "line", "list",
              "mark", "note", "record", "order", "point", "pair", "glaze", "style",
              "test", "tip", "type", "wave", "watch", "step", "start", "stop",
              "store", "support", "switch", "talk", "rest", "help", "form",
              "display", "dust", "drop", "dress", "mold", "mould", "season",
              "spice", "stain", "stuff", "stitch", "thread", "trim", "frost",
              "brush", "clip", "coat", "cover", "crack", "cube", "curl",
              "hammer", "hook", "knock", "lace", "oil", "pin", "plug", "pump",
              "punch", "rake", "screw", "seal", "shape", "skewer", "slice",
              "sketch", "spray", "squash", "stack", "steam", "tap", "toast",
              "vacuum", "wrap", "zip", "light", "ring", "wind", "set", "cut",
              "lay", "sink", "stick", "fit", "deal", "beat", "fly", "hit",
              "fall", "build", "lead", "drink", "shot", "mop", "sand",
              "puree", "zest", "hull", "chisel", "buff", "fillet", "mix",
              "grill", "roll", "tie", "twist", "turn", "peel", "whip", "whisk",
              "strain", "measure", "press", "pack", "pat", "model", "design",
              "play", "walk", "smile", "smell", "taste", "look", "touch", "kiss",
              "hug", "jump", "kick", "clap", "dance", "cook", "shift"}


def regular_forms(base):
    if base.endswith("e") and not base.endswith("ee"):
        ing = base[:-1] + "ing"
        ed = base + "d"
    elif base.endswith("ie"):
        ing = base[:-2] + "ying"
        ed = base + "d"
    elif base.endswith("y") and base[-2:-1] not in "aeiou":
        ing = base + "ing"
        ed = base[:-1] + "ied"
    elif (len(base) >= 3 and base[-1] not in "aeiouwxy" and base[-2] in "aeiou"
          and base[-3] not in "aeiou" and len(base) <= 4):
        ing = base + base[-1] + "ing"
        ed = base + base[-1] + "ed"
    else:
        ing = base + "ing"
        ed = base + "ed"
    if base.endswith(("s", "sh", "ch", "x", "z", "o")):
        s = base + "es"
    elif base.endswith("y") and base[-2:-1] not in "aeiou":
        s = base[:-1] + "ies"
    else:
        s = base + "s"
    return s, ed, ed, ing


def plural(noun):
    if noun.endswith(("s", "sh", "ch", "x", "z")):
        return noun + "es"
    if noun.endswith("y") and noun[-2:-1] not in "aeiou":
        return noun[:-1] + "ies"
    if noun.endswith("f"):
        return noun[:-1] + "ves"
    if noun.endswith("fe"):
        return noun[:-2] + "ves"
    return noun + "s"


def main():
    lex = {}

    def put(word, tag, force=False):
        word = word.lower()
        if force or word not in lex:
            lex[word] = tag

    for w in DET:
        put(w, "DET", True)
    for w in PRON:
        put(w, "PRON", True)
    for w in ADP:
        put(w, "ADP", True)
    for w in AUX:
        put(w, "AUX", True)
    for w in OTHER:
        put(w, "OTHER")
    for w in NUM:
        put(w, "ADJ")

    nouns = sorted(set(NOUN))
    for n in nouns:
        if n.endswith("'s"):
            continue
        put(n, "NOUN")
    for base, forms in sorted(VERB_IRREGULAR.items()):
        if base not in AUX and base not in lex:
            put(base, "NOUN" if base in NOUN_FIRST else "VERB")
        for f in forms:
            if f not in AUX:
                put(f, "VERB", f not in nouns and f not in DET and f not in PRON and f not in ADP)
    for base in sorted(set(VERB_REGULAR)):
        put(base, "NOUN" if base in NOUN_FIRST or base in nouns else "VERB")
        s, ed, _, ing = regular_forms(base)
        put(s, "VERB", s not in nouns)
        put(ed, "VERB", True)
        put(ing, "VERB", ing not in nouns)
    for n in nouns:
        if n.endswith("'s") or n.endswith("s"):
            continue
        p = plural(n)
        if p not in lex:
            put(p, "NOUN")
    for a in sorted(set(ADJ)):
        put(a, "ADJ", a not in nouns and lex.get(a) != "VERB")
    # Re-assert closed classes over anything generated above.
    for w in DET:
        lex[w] = "DET"
    for w in ADP:
        lex[w] = "ADP"
    for w in AUX:
        lex[w] = "AUX"
    for w in PRON:
        lex[w] = "PRON"

    out = sys.stdout
    out.write("# token\tPOS -- generated by tools/gen_lexicon.py\n")
    for word in sorted(lex):
        out.write(f"{word}\t{lex[word]}\n")


if __name__ == "__main__":
    main()
